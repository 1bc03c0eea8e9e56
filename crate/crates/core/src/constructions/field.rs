//! Small finite fields `GF(p^e)` with full addition and multiplication
//! tables.

/// `Some((p, e))` when `q = p^e` for a prime `p` and `e >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Prime powers in `2..=max`, ascending.
pub fn prime_powers_up_to(max: u64) -> Vec<u64> {
    (2..=max).filter(|&q| prime_power(q).is_some()).collect()
}

/// Elements are integers `0..q` encoding polynomials over `GF(p)` in base
/// `p` (least significant digit is the constant term).
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

fn digits(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0; len];
    for c in d.iter_mut() {
        *c = x % p;
        x /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic `m`, coefficients low-to-high.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Monic polynomial of degree `deg` whose lower coefficients encode `code`.
fn monic(code: u32, p: u32, deg: usize) -> Vec<u32> {
    let mut d = digits(code, p, deg);
    d.push(1);
    d
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let g = monic(code, p, d);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// Builds `GF(q)`. Extension fields use the monic irreducible modulus
    /// whose lower coefficients have the smallest base-`p` encoding.
    pub fn new(q: u64) -> Option<Self> {
        let (p, e) = prime_power(q)?;
        if q > 1 << 12 {
            return None;
        }
        let (p, e, q) = (p as u32, e, q as u32);
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            (0..q).map(|c| monic(c, p, e as usize)).find(|f| is_irreducible(f, p))?
        };
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            let da = digits(a, p, e as usize);
            for b in 0..q {
                let db = digits(b, p, e as usize);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum, p);
                let prod = if e == 1 { vec![(a * b) % p] } else { poly_rem(&poly_mul(&da, &db, p), &modulus, p) };
                mul[(a * q + b) as usize] = undigits(&prod, p);
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap()).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[(a * q + b) as usize] == 1).expect("field has inverses") })
            .collect();
        Some(FiniteField { p, e, q, modulus, add, mul, neg, inv })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Coefficients of the defining modulus, low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn dot(&self, x: &[u32; 3], y: &[u32; 3]) -> u32 {
        let mut s = 0;
        for i in 0..3 {
            s = self.add(s, self.mul(x[i], y[i]));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_powers_up_to(16), vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]);
    }

    #[test]
    fn field_axioms_hold_for_all_small_orders() {
        for q in prime_powers_up_to(16) {
            let f = FiniteField::new(q).unwrap();
            let q = q as u32;
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
    }
}
