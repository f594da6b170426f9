//! Arithmetic in `F_{p^k}` as `F_p[x]/(f)` for a deterministically chosen
//! monic irreducible `f` of degree `k`. Elements are coefficient vectors of
//! length `k`. Only what the point-counting oracle needs.

use crate::arith::pow_mod;

#[derive(Debug, Clone)]
pub(crate) struct ExtField {
    pub p: u64,
    pub k: usize,
    /// Monic modulus of degree k; length k+1, modulus[k] = 1.
    modulus: Vec<u64>,
}

pub(crate) type ExtElt = Vec<u64>;

impl ExtField {
    /// Build `F_{p^k}`. The modulus is the first monic irreducible of
    /// degree `k` in a fixed enumeration, so the field is reproducible.
    pub fn new(p: u64, k: usize) -> Self {
        assert!(k >= 1);
        if k == 1 {
            return ExtField { p, k, modulus: vec![0, 1] };
        }
        let mut counter = 0u64;
        loop {
            // lower coefficients = base-p digits of the counter
            let mut f = vec![0u64; k + 1];
            let mut c = counter;
            for coeff in f.iter_mut().take(k) {
                *coeff = c % p;
                c /= p;
            }
            assert!(c == 0, "exhausted candidates without finding an irreducible");
            f[k] = 1;
            if is_irreducible(&f, p) {
                return ExtField { p, k, modulus: f };
            }
            counter += 1;
        }
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn zero(&self) -> ExtElt {
        vec![0; self.k]
    }

    pub fn embed(&self, c: u64) -> ExtElt {
        let mut e = self.zero();
        e[0] = c % self.p;
        e
    }

    /// The element whose coefficient vector is the base-p expansion of
    /// `index`; enumerating `0..q` visits every element once.
    pub fn element(&self, mut index: u64) -> ExtElt {
        let mut e = self.zero();
        for c in e.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        e
    }

    pub fn is_zero(&self, a: &ExtElt) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn sub(&self, a: &ExtElt, b: &ExtElt) -> ExtElt {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect()
    }

    pub fn mul(&self, a: &ExtElt, b: &ExtElt) -> ExtElt {
        let k = self.k;
        let mut wide = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                wide[i + j] = (wide[i + j] as u128 + x as u128 * y as u128).rem_euclid(self.p as u128)
                    as u64;
            }
        }
        // reduce by the monic modulus
        for d in (k..2 * k - 1).rev() {
            let lead = wide[d];
            if lead == 0 {
                continue;
            }
            wide[d] = 0;
            for (j, &mc) in self.modulus.iter().enumerate().take(k) {
                if mc != 0 {
                    let idx = d - k + j;
                    let sub = (lead as u128 * mc as u128 % self.p as u128) as u64;
                    wide[idx] = (wide[idx] + self.p - sub) % self.p;
                }
            }
        }
        wide.truncate(k);
        wide
    }

    pub fn pow(&self, a: &ExtElt, mut e: u64) -> ExtElt {
        let mut base = a.clone();
        let mut acc = self.embed(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_one(&self, a: &ExtElt) -> bool {
        a[0] == 1 && a[1..].iter().all(|&c| c == 0)
    }
}

// --- polynomial arithmetic mod (f, p) used by the irreducibility test ---

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let k = f.len() - 1;
    let mut wide = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            wide[i + j] = ((wide[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    for d in (k..wide.len()).rev() {
        let lead = wide[d];
        if lead == 0 {
            continue;
        }
        wide[d] = 0;
        for (j, &mc) in f.iter().enumerate().take(k) {
            if mc != 0 {
                let sub = (lead as u128 * mc as u128 % p as u128) as u64;
                wide[d - k + j] = (wide[d - k + j] + p - sub) % p;
            }
        }
    }
    wide.truncate(k.max(1));
    wide
}

fn poly_pow_mod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let k = f.len() - 1;
    let mut acc = vec![0u64; k.max(1)];
    acc[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, f, p);
        }
        base = poly_mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn poly_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn poly_gcd_deg(a: &[u64], b: &[u64], p: u64) -> Option<usize> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    loop {
        let Some(db) = poly_deg(&b) else { return poly_deg(&a) };
        // a = a mod b
        let lead_inv = pow_mod(b[db], p - 2, p);
        while let Some(da) = poly_deg(&a) {
            if da < db {
                break;
            }
            let factor = (a[da] as u128 * lead_inv as u128 % p as u128) as u64;
            for j in 0..=db {
                let sub = (factor as u128 * b[j] as u128 % p as u128) as u64;
                a[da - db + j] = (a[da - db + j] + p - sub) % p;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// Monic `f` of degree `k >= 2` is irreducible over `F_p` iff
/// `x^{p^k} = x (mod f)` and `gcd(x^{p^{k/d}} - x, f) = 1` for every prime
/// divisor `d` of `k`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    let x = vec![0, 1];
    // frob[j] = x^{p^{j+1}} mod f
    let mut frob = Vec::with_capacity(k);
    let mut cur = x.clone();
    for _ in 0..k {
        cur = poly_pow_mod(&cur, p, f, p);
        frob.push(cur.clone());
    }
    let minus_x = |u: &[u64]| -> Vec<u64> {
        let mut v = u.to_vec();
        if v.len() < 2 {
            v.resize(2, 0);
        }
        v[1] = (v[1] + p - 1) % p;
        v
    };
    if poly_deg(&minus_x(&frob[k - 1])).is_some() {
        return false;
    }
    let mut rest = k;
    let mut divisors = Vec::new();
    let mut d = 2;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            divisors.push(d);
            while rest.is_multiple_of(d) {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        divisors.push(rest);
    }
    for d in divisors {
        let u = minus_x(&frob[k / d - 1]);
        if poly_gcd_deg(&u, f, p) != Some(0) {
            return false;
        }
    }
    true
}
