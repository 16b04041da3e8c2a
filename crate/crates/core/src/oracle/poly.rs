//! Dense univariate polynomials over `F_p` and their rational roots.

use rand::Rng;

use super::field::PrimeField;

/// Coefficients from the constant term up; kept trimmed.
pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &Poly) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn mul(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = f.inv(b[db]);
    let mut r = a.clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let q = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(q, c));
        }
        r = trim(r);
    }
    r
}

pub fn monic(f: &PrimeField, a: Poly) -> Poly {
    match a.last() {
        None => a,
        Some(&lead) => {
            let inv = f.inv(lead);
            a.into_iter().map(|c| f.mul(c, inv)).collect()
        }
    }
}

pub fn gcd(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, x)
}

/// `base^exp mod modulus`.
pub fn pow_mod(f: &PrimeField, base: &Poly, mut exp: u64, modulus: &Poly) -> Poly {
    let mut acc = rem(f, &vec![1], modulus);
    let mut b = rem(f, base, modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), modulus);
        }
        b = rem(f, &mul(f, &b, &b), modulus);
        exp >>= 1;
    }
    acc
}

fn sub_poly(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(out)
}

/// Product of the distinct linear factors of a nonzero `a`.
pub fn rational_root_part(f: &PrimeField, a: &Poly) -> Poly {
    let a = monic(f, trim(a.clone()));
    if degree(&a).unwrap_or(0) == 0 {
        return vec![1];
    }
    let xp = pow_mod(f, &vec![0, 1], f.modulus(), &a);
    gcd(f, &a, &sub_poly(f, &xp, &vec![0, 1]))
}

/// One rational root of `a`, chosen at random, or `None` if there is none.
pub fn random_root<R: Rng>(f: &PrimeField, a: &Poly, rng: &mut R) -> Option<u64> {
    let mut h = rational_root_part(f, a);
    loop {
        match degree(&h) {
            None | Some(0) => return None,
            Some(1) => return Some(f.neg(f.mul(h[0], f.inv(h[1])))),
            Some(k) => {
                let shift = rng.random_range(0..f.modulus());
                let w = pow_mod(f, &vec![shift, 1], (f.modulus() - 1) / 2, &h);
                let g = gcd(f, &h, &sub_poly(f, &w, &vec![1]));
                let dg = degree(&g).unwrap_or(0);
                if dg == 0 || dg == k {
                    continue;
                }
                h = if rng.random_bool(0.5) { g } else { divide_exact(f, &h, &g) };
            }
        }
    }
}

fn divide_exact(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    let db = degree(b).expect("nonzero divisor");
    let lead_inv = f.inv(b[db]);
    let mut r = a.clone();
    let mut q = vec![0; a.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        q[dr - db] = c;
        for (i, &x) in b.iter().enumerate() {
            r[dr - db + i] = f.sub(r[dr - db + i], f.mul(c, x));
        }
        r = trim(r);
    }
    debug_assert!(r.is_empty());
    trim(q)
}

pub fn eval(f: &PrimeField, a: &Poly, x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roots_of_split_polynomial() {
        let f = PrimeField::new(32003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x-3)(x-7)(x-11)(x^2+1); -1 is a non-residue mod 32003
        let mut a = vec![1];
        for r in [3, 7, 11] {
            a = mul(&f, &a, &vec![f.neg(r), 1]);
        }
        a = mul(&f, &a, &vec![1, 0, 1]);
        assert_eq!(degree(&rational_root_part(&f, &a)), Some(3));
        for _ in 0..20 {
            let r = random_root(&f, &a, &mut rng).unwrap();
            assert!([3, 7, 11].contains(&r));
            assert_eq!(eval(&f, &a, r), 0);
        }
    }

    #[test]
    fn no_roots() {
        let f = PrimeField::new(32003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert_eq!(random_root(&f, &vec![1, 0, 1], &mut rng), None);
        assert_eq!(random_root(&f, &vec![5], &mut rng), None);
    }

    #[test]
    fn repeated_roots_are_found_once() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = mul(&f, &vec![f.neg(4), 1], &vec![f.neg(4), 1]);
        assert_eq!(rational_root_part(&f, &a), vec![f.neg(4), 1]);
        assert_eq!(random_root(&f, &a, &mut rng), Some(4));
    }
}
