use std::io::{self, Write};
use std::process::ExitCode;

use mirror_stringy::WeightVector;
use rayon::prelude::*;

use crate::{exit_code, output, records, Format, ScanArgs};

const MAX_DIM: usize = 6;
const MAX_DEGREE: u64 = 400;
const CHUNK: usize = 64;

/// Nondecreasing tuples of `len` positive integers with sum at most `wmax`,
/// in lexicographic order.
fn tuples(len: usize, wmax: u64) -> Vec<Vec<u64>> {
    fn go(prefix: &mut Vec<u64>, len: usize, budget: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let lo = prefix.last().copied().unwrap_or(1);
        let left = (len - prefix.len()) as u64;
        for x in lo.. {
            if x * left > budget {
                break;
            }
            prefix.push(x);
            go(prefix, len, budget - x, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(len), len, wmax, &mut out);
    out
}

fn candidates(dim: usize, wmax: u64) -> Vec<WeightVector> {
    let mut found: Vec<WeightVector> = tuples(dim + 1, wmax)
        .into_par_iter()
        .filter_map(|w| WeightVector::new(&w).ok())
        .filter(WeightVector::ip)
        .collect();
    found.sort_by(|a, b| a.weights().cmp(b.weights()));
    found
}

pub fn run(args: &ScanArgs, format: Format) -> ExitCode {
    if args.dim < 1 || args.dim > MAX_DIM {
        eprintln!("error: --dim must lie in 1..={MAX_DIM}");
        return ExitCode::from(2);
    }
    if args.wmax > MAX_DEGREE {
        eprintln!("error: --wmax is capped at {MAX_DEGREE}");
        return ExitCode::from(2);
    }
    let todo: Vec<WeightVector> = candidates(args.dim, args.wmax)
        .into_iter()
        .skip(args.skip)
        .collect();
    let out = io::stdout();
    let mut out = out.lock();
    let mut first = true;
    for chunk in todo.chunks(CHUNK) {
        let rows: Vec<_> = chunk.par_iter().map(records::scan_row).collect();
        for row in rows {
            let row = match row {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(exit_code(&e));
                }
            };
            let written =
                output::write_one(&mut out, &row, format, first).and_then(|()| out.flush());
            match written {
                Ok(()) => {}
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => return ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(4);
                }
            }
            first = false;
        }
    }
    ExitCode::SUCCESS
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_are_sorted_and_bounded() {
        let t = tuples(3, 6);
        assert_eq!(t.first().unwrap(), &vec![1, 1, 1]);
        assert!(t.windows(2).all(|p| p[0] < p[1]));
        assert!(t
            .iter()
            .all(|x| x.iter().sum::<u64>() <= 6 && x.windows(2).all(|p| p[0] <= p[1])));
        assert_eq!(t.len(), 7);
    }

    #[test]
    fn small_scan_finds_the_cubic_curve() {
        let found = candidates(2, 3);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].weights(), &[1, 1, 1]);
    }
}
