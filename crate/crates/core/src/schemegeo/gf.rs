//! Arithmetic in `F_q` for point counting: primes directly, small prime
//! powers `p^k` (`k >= 2`, `q <= 256`) through lookup tables built from an
//! irreducible polynomial.

use super::field::is_prime;

/// Largest proper prime power with table arithmetic.
pub const MAX_TABLE_ORDER: u64 = 256;

#[derive(Clone, Debug)]
pub(crate) struct Gf {
    q: u64,
    tables: Option<Tables>,
}

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d)).expect("q >= 2 has a divisor");
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, k))
}

/// Polynomials over `F_p` as coefficient vectors, lowest degree first.
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let lead_inv = (1..p).find(|x| x * b[db] % p == 1).expect("nonzero leading coefficient");
    while a.len() > db && !a.is_empty() {
        let top = *a.last().expect("nonempty");
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = a.len() - 1 - db;
            for (i, &c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p * p - f * c % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn digits(mut x: u64, p: u64, k: u32) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u64], p: u64) -> u64 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Monic irreducible polynomial of degree `k`: no monic factor of degree
/// `1..=k/2`.
fn irreducible(p: u64, k: u32) -> Vec<u64> {
    let monic = |deg: u32, low: u64| {
        let mut c = digits(low, p, deg);
        c.push(1);
        c
    };
    (0..p.pow(k))
        .map(|low| monic(k, low))
        .find(|f| {
            (1..=k / 2)
                .all(|deg| (0..p.pow(deg)).all(|low| poly_rem(f.clone(), &monic(deg, low), p).iter().any(|&c| c != 0)))
        })
        .expect("irreducible polynomials exist in every degree")
}

impl Gf {
    /// `None` unless `q` is a prime below `2^31` or a prime power up to
    /// [`MAX_TABLE_ORDER`].
    pub(crate) fn new(q: u64) -> Option<Gf> {
        let (p, k) = prime_power(q)?;
        if k == 1 {
            return (q < 1 << 31).then_some(Gf { q, tables: None });
        }
        if q > MAX_TABLE_ORDER {
            return None;
        }
        let f = irreducible(p, k);
        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * n + b as usize] = undigits(&sum, p) as u16;
                let mut prod = vec![0u64; 2 * k as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut rem = poly_rem(prod, &f, p);
                rem.resize(k as usize, 0);
                mul[a as usize * n + b as usize] = undigits(&rem, p) as u16;
            }
        }
        let neg = (0..n).map(|a| (0..n).find(|&b| add[a * n + b] == 0).expect("additive inverse") as u16).collect();
        let inv = (0..n).map(|a| (0..n).find(|&b| mul[a * n + b] == 1).unwrap_or(0) as u16).collect();
        Some(Gf { q, tables: Some(Tables { add, mul, neg, inv }) })
    }

    pub(crate) fn q(&self) -> u64 {
        self.q
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            None => (a + b) % self.q,
            Some(t) => u64::from(t.add[(a * self.q + b) as usize]),
        }
    }

    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            None => (a + self.q - b) % self.q,
            Some(t) => self.add(a, u64::from(t.neg[b as usize])),
        }
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            None => a * b % self.q,
            Some(t) => u64::from(t.mul[(a * self.q + b) as usize]),
        }
    }

    pub(crate) fn inv(&self, a: u64) -> u64 {
        match &self.tables {
            None => {
                let (mut b, mut e, mut acc) = (a % self.q, self.q - 2, 1u64);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * b % self.q;
                    }
                    b = b * b % self.q;
                    e >>= 1;
                }
                acc
            }
            Some(t) => u64::from(t.inv[a as usize]),
        }
    }
}
