//! Arithmetic in `F_p` and its quadratic extension.

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

/// Euler's criterion; zero counts as a square.
pub(crate) fn is_square(x: u64, p: u64) -> bool {
    x % p == 0 || pow_mod(x, (p - 1) / 2, p) == 1
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn least_primitive_root(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).unwrap_or(1)
}

/// `F_p[x]/(x² − ε)` for a non-square `ε`; elements are `a + b·x`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct QuadraticExtension {
    pub p: u64,
    pub eps: u64,
}

impl QuadraticExtension {
    pub fn mul(&self, (a, b): (u64, u64), (c, d): (u64, u64)) -> (u64, u64) {
        let p = self.p;
        ((a * c + b * d % p * self.eps) % p, (a * d + b * c) % p)
    }

    pub fn pow(&self, mut x: (u64, u64), mut e: u64) -> (u64, u64) {
        let mut acc = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    /// Least generator of the multiplicative group in `(a, b)` order.
    pub fn least_generator(&self) -> (u64, u64) {
        let order = self.p * self.p - 1;
        let factors = prime_factors(order);
        (0..self.p)
            .flat_map(|a| (0..self.p).map(move |b| (a, b)))
            .filter(|&x| x != (0, 0))
            .find(|&x| factors.iter().all(|&q| self.pow(x, order / q) != (1, 0)))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_roots() {
        assert_eq!(least_primitive_root(5), 2);
        assert_eq!(least_primitive_root(7), 3);
        assert_eq!(least_primitive_root(11), 2);
        assert_eq!(least_primitive_root(13), 2);
        for p in [3, 5, 7, 11, 13, 17, 19, 23] {
            assert!(!is_square(least_primitive_root(p), p));
        }
    }

    #[test]
    fn extension_generator_has_full_order() {
        for p in [3u64, 5, 7, 11, 13] {
            let f = QuadraticExtension { p, eps: least_primitive_root(p) };
            let g = f.least_generator();
            let mut x = g;
            let mut k = 1;
            while x != (1, 0) {
                x = f.mul(x, g);
                k += 1;
            }
            assert_eq!(k, p * p - 1);
        }
    }
}
