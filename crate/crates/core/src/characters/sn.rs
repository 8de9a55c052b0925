//! Characters of symmetric groups by the Murnaghan–Nakayama rule.

use crate::error::{Error, Result};

/// A Young diagram as a nonincreasing list of positive row lengths.
pub type Partition = Vec<usize>;

pub fn validate(lambda: &[usize]) -> Result<()> {
    if lambda.contains(&0) || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::input(format!("{lambda:?} is not a partition")));
    }
    Ok(())
}

/// All partitions of `n` in reverse lexicographic order, starting with `(n)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// The transposed diagram.
pub fn conjugate(lambda: &[usize]) -> Partition {
    let width = lambda.first().copied().unwrap_or(0);
    (1..=width).map(|col| lambda.iter().filter(|&&row| row >= col).count()).collect()
}

/// Degree by the hook-length formula.
pub fn dimension(lambda: &[usize]) -> u64 {
    let n: usize = lambda.iter().sum();
    let cols = conjugate(lambda);
    let mut hooks: u128 = 1;
    for (i, &row) in lambda.iter().enumerate() {
        for (j, &col) in cols.iter().enumerate().take(row) {
            hooks *= (row - j + col - i - 1) as u128;
        }
    }
    let fact: u128 = (1..=n as u128).product();
    (fact / hooks) as u64
}

/// `p₂(λ) = Σ_i λ_i (λ_i − 2i + 1)` with rows indexed from 1.
pub fn p2(lambda: &[usize]) -> i64 {
    lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let l = l as i64;
            l * (l - 2 * (i as i64 + 1) + 1)
        })
        .sum()
}

/// `χ_λ(μ)` for a class of cycle type `μ`.
pub fn character(lambda: &[usize], mu: &[usize]) -> Result<i64> {
    validate(lambda)?;
    let n: usize = lambda.iter().sum();
    let mut mu: Vec<usize> = mu.iter().copied().filter(|&x| x > 0).collect();
    if mu.iter().sum::<usize>() != n {
        return Err(Error::input(format!("cycle type {mu:?} does not match |λ| = {n}")));
    }
    mu.sort_unstable_by(|a, b| b.cmp(a));
    let m = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + m - 1 - i).collect();
    Ok(mn(&beta, &mu))
}

/// Murnaghan–Nakayama on beta-numbers: removing a rim hook of length `k`
/// moves one bead from `b` to `b − k`; the sign counts beads jumped over.
fn mn(beta: &[usize], mu: &[usize]) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.to_vec();
        next[idx] = target;
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&next, rest);
    }
    total
}

/// Value at a transposition from the Frobenius formula `dim·p₂/(n(n−1))`.
pub fn transposition_value(lambda: &[usize]) -> Result<i64> {
    validate(lambda)?;
    let n: i64 = lambda.iter().sum::<usize>() as i64;
    if n < 2 {
        return Err(Error::input("transpositions need n >= 2"));
    }
    let num = dimension(lambda) as i64 * p2(lambda);
    let den = n * (n - 1);
    if num % den != 0 {
        return Err(Error::invariant(format!("Frobenius formula gives a non-integer for {lambda:?}")));
    }
    Ok(num / den)
}

/// Cycle type of a transposition in `S_n`.
pub fn transposition_type(n: usize) -> Vec<usize> {
    let mut t = vec![2];
    t.extend(std::iter::repeat(1).take(n - 2));
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(4)[0], vec![4]);
    }

    #[test]
    fn trivial_and_sign() {
        for mu in partitions(5) {
            assert_eq!(character(&[5], &mu).unwrap(), 1);
            let odd = mu.iter().map(|&c| c - 1).sum::<usize>() % 2;
            let sign = if odd == 1 { -1 } else { 1 };
            assert_eq!(character(&[1, 1, 1, 1, 1], &mu).unwrap(), sign);
        }
    }

    #[test]
    fn s4_standard_column() {
        // standard = permutation character − 1, permutation character = fixed points
        for mu in partitions(4) {
            let fixed = mu.iter().filter(|&&c| c == 1).count() as i64;
            assert_eq!(character(&[3, 1], &mu).unwrap(), fixed - 1);
        }
    }

    #[test]
    fn identity_column_is_hook_dimension() {
        for n in 1..=7 {
            let id = vec![1; n];
            for lambda in partitions(n) {
                assert_eq!(character(&lambda, &id).unwrap(), dimension(&lambda) as i64);
            }
        }
    }

    #[test]
    fn frobenius_agrees_with_mn() {
        for n in 2..=8 {
            for lambda in partitions(n) {
                assert_eq!(transposition_value(&lambda).unwrap(), character(&lambda, &transposition_type(n)).unwrap());
            }
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(dimension(&[3, 3]), 5);
        assert_eq!(p2(&[3, 3]), 6);
        assert_eq!(dimension(&[3, 2, 1]), 16);
        // standard representation: p2 = n(n-3)
        for n in 3..=8 {
            assert_eq!(p2(&[n - 1, 1]), (n * (n - 3)) as i64);
        }
    }

    #[test]
    fn p2_is_odd_under_transpose() {
        for n in 1..=8 {
            for lambda in partitions(n) {
                assert_eq!(p2(&conjugate(&lambda)), -p2(&lambda));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(character(&[1, 2], &[3]).is_err());
        assert!(character(&[2, 1], &[2]).is_err());
    }
}
