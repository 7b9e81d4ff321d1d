//! The Witt algebra 𝔇 over 𝔽_p, `[D_k, D_l] = (l - k) D_{k+l}` with indices
//! read mod p, and its restricted enveloping algebra U_c(𝔇), the quotient of
//! U(𝔇) by `D_0^p - D_0` and `D_k^p` (k ≠ 0).
//!
//! Basis: `D_0^{a_0} ... D_{p-1}^{a_{p-1}}` with every `a_k < p`. Exponents
//! are packed four bits apiece into a `u64`, which caps the modulus at 13.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;

use crate::algebra::{Algebra, Enveloping, Generated, Lin};
use crate::exactnum::{binomial, sign, FpElem, Integer, Prime};
use crate::report::{Point, VerificationReport};
use crate::text::RenderMono;
use crate::Error;

/// Largest modulus whose exponents fit the packed representation.
pub const MAX_MODULUS: u32 = 13;

const NIBBLE: u32 = 4;

/// Exponent vector `(a_0, ..., a_{p-1})`, each `a_k < p`, packed into nibbles.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RestrictedMonomial {
    packed: u64,
    p: u8,
}

pub type ElementP = Lin<FpElem, RestrictedMonomial>;

impl RestrictedMonomial {
    pub fn one(p: Prime) -> Self {
        RestrictedMonomial { packed: 0, p: p.get() as u8 }
    }

    pub fn generator(k: u32, p: Prime) -> Self {
        Self::one(p).with_exponent(k, 1)
    }

    /// `None` unless the vector has length p and every entry is below p.
    pub fn from_exponents(exps: &[u32], p: Prime) -> Option<Self> {
        if exps.len() != p.get() as usize || exps.iter().any(|&a| a >= p.get()) {
            return None;
        }
        let packed = exps.iter().enumerate().fold(0u64, |acc, (k, &a)| acc | (u64::from(a) << (NIBBLE * k as u32)));
        Some(RestrictedMonomial { packed, p: p.get() as u8 })
    }

    pub fn modulus(self) -> Prime {
        Prime::new(u32::from(self.p)).expect("validated at construction")
    }

    pub fn exponent(self, k: u32) -> u32 {
        ((self.packed >> (NIBBLE * k)) & 0xf) as u32
    }

    pub fn exponents(self) -> Vec<u32> {
        (0..u32::from(self.p)).map(|k| self.exponent(k)).collect()
    }

    fn with_exponent(self, k: u32, a: u32) -> Self {
        let shift = NIBBLE * k;
        RestrictedMonomial { packed: (self.packed & !(0xf << shift)) | (u64::from(a) << shift), p: self.p }
    }

    pub fn is_one(self) -> bool {
        self.packed == 0
    }

    /// Total number of generator factors.
    pub fn len(self) -> u32 {
        (0..u32::from(self.p)).map(|k| self.exponent(k)).sum()
    }

    pub fn is_empty(self) -> bool {
        self.is_one()
    }

    /// Largest index with a nonzero exponent.
    fn last(self) -> Option<u32> {
        (self.packed != 0).then(|| (63 - self.packed.leading_zeros()) / NIBBLE)
    }

    /// Grading `|D_k| = k` in ℤ/p.
    pub fn degree(self) -> u32 {
        let p = u32::from(self.p);
        (0..p).map(|k| k * self.exponent(k)).sum::<u32>() % p
    }
}

impl Ord for RestrictedMonomial {
    // By length, then lexicographically with lower indices most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| other.exponents().cmp(&self.exponents()))
    }
}

impl PartialOrd for RestrictedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RestrictedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = (0..u32::from(self.p))
            .filter_map(|k| match self.exponent(k) {
                0 => None,
                1 => Some(format!("D{}", crate::uwitt::sub_index(i64::from(k)))),
                a => Some(format!("D{}^{a}", crate::uwitt::sub_index(i64::from(k)))),
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl RenderMono for RestrictedMonomial {
    fn render(&self) -> String {
        self.to_string()
    }
}

/// U_c(𝔇) with memoized straightening and p-reduction.
pub struct RestrictedWitt {
    p: Prime,
    by_gen: DashMap<(RestrictedMonomial, u32), Arc<ElementP>>,
    by_mono: DashMap<(RestrictedMonomial, RestrictedMonomial), Arc<ElementP>>,
}

impl RestrictedWitt {
    pub fn new(p: Prime) -> Result<Arc<Self>, Error> {
        if p.get() > MAX_MODULUS {
            return Err(Error::UnsupportedModulus(p.get()));
        }
        Ok(Arc::new(RestrictedWitt { p, by_gen: DashMap::new(), by_mono: DashMap::new() }))
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn scalar_of(&self, n: i64) -> FpElem {
        self.p.elem(n)
    }

    fn idx(&self, k: i64) -> u32 {
        k.rem_euclid(i64::from(self.p.get())) as u32
    }

    /// `D_k` with `k` read mod p.
    pub fn d(&self, k: i64) -> ElementP {
        Lin::term(RestrictedMonomial::generator(self.idx(k), self.p), self.p.elem(1))
    }

    /// Append `D_g` to a monomial whose indices are all `<= g`.
    fn push(&self, u: RestrictedMonomial, g: u32) -> ElementP {
        let a = u.exponent(g) + 1;
        if a < self.p.get() {
            return Lin::term(u.with_exponent(g, a), self.p.elem(1));
        }
        if g != 0 {
            return Lin::zero();
        }
        // D_0^p = D_0; with g = 0 the prefix is empty
        Lin::term(u.with_exponent(0, 1), self.p.elem(1))
    }

    /// `u * D_g` in canonical form.
    pub fn mul_gen(&self, u: RestrictedMonomial, g: u32) -> Arc<ElementP> {
        let key = (u, g);
        if let Some(hit) = self.by_gen.get(&key) {
            return hit.clone();
        }
        let out = match u.last() {
            Some(m) if m > g => {
                // u' D_m D_g = u' D_g D_m + (g - m) u' D_{m+g}
                let prefix = u.with_exponent(m, u.exponent(m) - 1);
                let mut out = ElementP::zero();
                for (w, c) in self.mul_gen(prefix, g).iter() {
                    out.add_scaled(&self.mul_gen(*w, m), c);
                }
                let bracket = self.p.elem(i64::from(g) - i64::from(m));
                out.add_scaled(&self.mul_gen(prefix, (m + g) % self.p.get()), &bracket);
                out
            }
            _ => self.push(u, g),
        };
        let out = Arc::new(out);
        self.by_gen.insert(key, out.clone());
        out
    }

    /// Product of a sequence of generators `D_{k_1} ... D_{k_n}`.
    pub fn word_product(&self, word: &[i64]) -> ElementP {
        let mut acc = self.one();
        for &g in word {
            acc = self.mul(&acc, &self.d(g));
        }
        acc
    }
}

impl Algebra for RestrictedWitt {
    type C = FpElem;
    type M = RestrictedMonomial;

    fn one_coeff(&self) -> FpElem {
        self.p.elem(1)
    }

    fn unit_mono(&self) -> RestrictedMonomial {
        RestrictedMonomial::one(self.p)
    }

    fn mul_mono_with(&self, a: &RestrictedMonomial, b: &RestrictedMonomial, f: &mut dyn FnMut(RestrictedMonomial, &FpElem)) {
        for (m, c) in self.product(a, b).iter() {
            f(*m, c);
        }
    }
}

impl Enveloping for RestrictedWitt {
    fn product(&self, a: &RestrictedMonomial, b: &RestrictedMonomial) -> Arc<ElementP> {
        if b.is_one() {
            return Arc::new(Lin::term(*a, self.one_coeff()));
        }
        if a.is_one() {
            return Arc::new(Lin::term(*b, self.one_coeff()));
        }
        let key = (*a, *b);
        if let Some(hit) = self.by_mono.get(&key) {
            return hit.clone();
        }
        let mut acc = Lin::term(*a, self.one_coeff());
        for g in self.word(b) {
            let mut next = ElementP::zero();
            for (w, c) in acc.iter() {
                next.add_scaled(&self.mul_gen(*w, g), c);
            }
            acc = next;
        }
        let acc = Arc::new(acc);
        self.by_mono.insert(key, acc.clone());
        acc
    }
}

impl Generated for RestrictedWitt {
    type Gen = u32;

    fn gen_mono(&self, g: u32) -> RestrictedMonomial {
        RestrictedMonomial::generator(g % self.p.get(), self.p)
    }

    fn word(&self, m: &RestrictedMonomial) -> Vec<u32> {
        (0..self.p.get()).flat_map(|k| std::iter::repeat_n(k, m.exponent(k) as usize)).collect()
    }
}

/// `[D_k, D_l] = (l - k) D_{k+l}`.
pub fn bracket_p(k: FpElem, l: FpElem) -> Result<ElementP, Error> {
    if k.modulus() != l.modulus() {
        return Err(Error::ModulusMismatch(k.modulus().get(), l.modulus().get()));
    }
    let p = k.modulus();
    let index = (k + l).value();
    Ok(Lin::term(RestrictedMonomial::generator(index, p), l - k))
}

pub fn multiply_p(alg: &RestrictedWitt, x: &ElementP, y: &ElementP) -> ElementP {
    alg.mul(x, y)
}

/// Every basis monomial, in exponent-vector order.
pub fn basis(p: Prime) -> impl Iterator<Item = RestrictedMonomial> {
    let n = p.get();
    let total = u64::from(n).pow(n);
    (0..total).map(move |mut code| {
        let exps: Vec<u32> = (0..n)
            .map(|_| {
                let a = (code % u64::from(n)) as u32;
                code /= u64::from(n);
                a
            })
            .collect();
        RestrictedMonomial::from_exponents(&exps, p).expect("digits are below p")
    })
}

/// Bases up to this size are enumerated; larger ones are counted.
pub const ENUMERATION_LIMIT: u64 = 100_000;

/// `dim U_c(𝔇) = p^p`.
pub fn basis_size(p: Prime) -> Integer {
    let n = p.get();
    let count = u64::from(n).checked_pow(n);
    match count {
        Some(c) if c <= ENUMERATION_LIMIT => Integer::from(basis(p).count()),
        _ => num_traits::pow(Integer::from(n), n as usize),
    }
}

/// `e_k ↦ Σ_{l=-1}^{k} (-1)^l C(k+1, l+1) D_l`, with `D_{-1} = D_{p-1}`.
pub fn embed_witt(k: i64, p: Prime) -> Result<ElementP, Error> {
    let n = i64::from(p.get());
    if !(-1..=n - 2).contains(&k) {
        return Err(Error::IndexOutOfRange { index: k, range: format!("[-1, {}]", n - 2) });
    }
    let mut out = ElementP::zero();
    for l in -1..=k {
        let c = binomial((k + 1) as u64, (l + 1) as u64) * sign(l.unsigned_abs() as u32);
        let coeff = FpElem::from_integer(&c, p);
        out.add_term(RestrictedMonomial::generator(l.rem_euclid(n) as u32, p), coeff);
    }
    Ok(out)
}

/// `[e_k, e_l]` in 𝔴𝔦𝔱𝔱: `(l - k) e_{k+l}` when `k + l <= p - 2`, else 0.
/// Returned as `(coefficient, index)`.
pub fn witt_bracket(k: i64, l: i64, p: Prime) -> Option<(FpElem, i64)> {
    let s = k + l;
    (s <= i64::from(p.get()) - 2 && s >= -1).then(|| (p.elem(l - k), s))
}

/// Rank over 𝔽_p of the given vectors, by Gaussian elimination.
pub fn rank_mod_p(rows: &[Vec<FpElem>]) -> usize {
    let mut rows: Vec<Vec<FpElem>> = rows.to_vec();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inverse().expect("nonzero pivot");
        let pivot_row: Vec<FpElem> = rows[rank].iter().map(|&x| x * inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = *x - f * y;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// The embedding is a Lie morphism on all index pairs and its images are
/// linearly independent.
pub fn verify_witt_iso(p: Prime) -> Result<VerificationReport, Error> {
    let alg = RestrictedWitt::new(p)?;
    let n = i64::from(p.get());
    let images: Vec<ElementP> = (-1..=n - 2).map(|k| embed_witt(k, p)).collect::<Result<_, _>>()?;
    let image = |k: i64| &images[(k + 1) as usize];
    let mut report = VerificationReport::new();
    for k in -1..=n - 2 {
        for l in -1..=n - 2 {
            let point = Point::new().with("p", p.get()).with("k", k).with("l", l);
            let lhs = alg.commutator(image(k), image(l));
            let rhs = match witt_bracket(k, l, p) {
                Some((c, s)) => image(s).scale(&c),
                None => ElementP::zero(),
            };
            report.check_eq("[φ(e_k), φ(e_l)] = φ([e_k, e_l])", &point, &lhs, &rhs);
        }
    }
    let rows: Vec<Vec<FpElem>> = images
        .iter()
        .map(|x| {
            (0..p.get())
                .map(|j| x.get(&RestrictedMonomial::generator(j, p)).copied().unwrap_or_else(|| p.elem(0)))
                .collect()
        })
        .collect();
    let rank = rank_mod_p(&rows);
    report.check("φ injective", &Point::new().with("p", p.get()), rank == p.get() as usize, || {
        format!("rank {rank} of {}", p.get())
    });
    Ok(report)
}

/// `D_k X^m = m X^{m+k}` in `𝔽_p[X]/(X^p - 1)`, for `D_k = X^{k+1} d/dX`.
/// Returns the coefficient and the exponent of the image.
pub fn act_derivation(k: FpElem, m: u32) -> (FpElem, u32) {
    let p = k.modulus();
    (p.elem(i64::from(m)), (k.value() + m) % p.get())
}

/// A polynomial `Σ c_m X^m` in `𝔽_p[X]/(X^p - 1)` as its coefficient vector.
fn apply_derivation(k: FpElem, poly: &[FpElem]) -> Vec<FpElem> {
    let p = k.modulus();
    let mut out = vec![p.elem(0); poly.len()];
    for (m, &c) in poly.iter().enumerate() {
        let (a, e) = act_derivation(k, m as u32);
        out[e as usize] = out[e as usize] + a * c;
    }
    out
}

/// Operator commutators on every basis monomial `X^m` reproduce
/// `[D_k, D_l] = (l - k) D_{k+l}`.
pub fn verify_derivation_model(p: Prime) -> VerificationReport {
    let n = p.get();
    let mut report = VerificationReport::new();
    for k in 0..n {
        for l in 0..n {
            let (dk, dl) = (p.elem(i64::from(k)), p.elem(i64::from(l)));
            let mut bad = None;
            for m in 0..n {
                let mut x = vec![p.elem(0); n as usize];
                x[m as usize] = p.elem(1);
                let kl = apply_derivation(dk, &apply_derivation(dl, &x));
                let lk = apply_derivation(dl, &apply_derivation(dk, &x));
                let lhs: Vec<FpElem> = kl.iter().zip(&lk).map(|(&a, &b)| a - b).collect();
                let rhs: Vec<FpElem> = apply_derivation(dk + dl, &x).into_iter().map(|c| c * (dl - dk)).collect();
                if lhs != rhs {
                    bad = Some(format!("on X^{m}: {lhs:?} vs {rhs:?}"));
                    break;
                }
            }
            let point = Point::new().with("p", n).with("k", k).with("l", l);
            report.record("[D_k, D_l] = (l-k) D_{k+l} on 𝔽_p[X]/(X^p-1)", &point, bad);
        }
    }
    report
}

/// The restricted structure: `D_0^[p] = D_0`, `D_k^[p] = 0` otherwise.
pub fn p_power_map(k: FpElem) -> ElementP {
    let p = k.modulus();
    if k.is_zero() {
        Lin::term(RestrictedMonomial::generator(0, p), p.elem(1))
    } else {
        ElementP::zero()
    }
}

/// `D_k^p` by repeated multiplication agrees with [`p_power_map`].
pub fn verify_p_power(alg: &RestrictedWitt) -> VerificationReport {
    let p = alg.modulus();
    let mut report = VerificationReport::new();
    for k in 0..p.get() {
        let x = alg.d(i64::from(k));
        let point = Point::new().with("p", p.get()).with("k", k);
        report.check_eq("D_k^p = D_k^[p]", &point, &alg.pow(&x, p.get()), &p_power_map(p.elem(i64::from(k))));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn prime(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn mono(exps: &[u32], p: Prime) -> RestrictedMonomial {
        RestrictedMonomial::from_exponents(exps, p).unwrap()
    }

    /// Rewriting of raw words, independent of the memoized straightening:
    /// repeatedly pick the leftmost (or rightmost) reducible spot, either a
    /// descent `a > b` or a run of p equal letters.
    fn rewrite(word: &[u32], p: Prime, leftmost: bool) -> ElementP {
        let n = p.get() as usize;
        let mut pending: Vec<(Vec<u32>, FpElem)> = vec![(word.to_vec(), p.elem(1))];
        let mut out = ElementP::zero();
        while let Some((w, c)) = pending.pop() {
            let descent = |j: usize| w[j] > w[j + 1];
            let run = |j: usize| j + n <= w.len() && w[j..j + n].iter().all(|&x| x == w[j]);
            let mut candidates: Vec<usize> = (0..w.len()).filter(|&j| (j + 1 < w.len() && descent(j)) || run(j)).collect();
            if !leftmost {
                candidates.reverse();
            }
            let Some(&j) = candidates.first() else {
                let mut exps = vec![0u32; n];
                for &x in &w {
                    exps[x as usize] += 1;
                }
                out.add_term(mono(&exps, p), c);
                continue;
            };
            if run(j) {
                if w[j] == 0 {
                    let mut v = w[..j].to_vec();
                    v.push(0);
                    v.extend_from_slice(&w[j + n..]);
                    pending.push((v, c));
                }
                continue;
            }
            let (a, b) = (w[j], w[j + 1]);
            let mut swapped = w.clone();
            swapped.swap(j, j + 1);
            pending.push((swapped, c));
            let mut merged = w[..j].to_vec();
            merged.push((a + b) % p.get());
            merged.extend_from_slice(&w[j + 2..]);
            pending.push((merged, c * p.elem(i64::from(b) - i64::from(a))));
        }
        out
    }

    #[test]
    fn bracket_examples() {
        let p = prime(5);
        assert_eq!(bracket_p(p.elem(1), p.elem(2)).unwrap(), Lin::term(RestrictedMonomial::generator(3, p), p.elem(1)));
        assert!(bracket_p(p.elem(3), p.elem(3)).unwrap().is_zero());
        assert_eq!(bracket_p(p.elem(3), p.elem(4)).unwrap(), Lin::term(RestrictedMonomial::generator(2, p), p.elem(1)));
        assert!(matches!(bracket_p(p.elem(1), prime(3).elem(1)), Err(Error::ModulusMismatch(5, 3))));
    }

    #[test]
    fn multiply_examples() {
        let p = prime(5);
        let alg = RestrictedWitt::new(p).unwrap();
        let expected: ElementP = [(mono(&[0, 1, 0, 1, 0], p), p.elem(1)), (mono(&[0, 0, 0, 0, 1], p), p.elem(3))].into_iter().collect();
        assert_eq!(alg.mul(&alg.d(3), &alg.d(1)), expected);
        assert_eq!(alg.mul(&alg.pow(&alg.d(0), 4), &alg.d(0)), alg.d(0));
        assert!(alg.mul(&alg.pow(&alg.d(1), 4), &alg.d(1)).is_zero());
        assert!(alg.pow(&alg.d(2), 5).is_zero());
    }

    #[test]
    fn rendering() {
        let p = prime(5);
        assert_eq!(mono(&[2, 0, 0, 1, 0], p).to_string(), "D_0^2*D_3");
        assert_eq!(RestrictedMonomial::one(p).to_string(), "1");
        let alg = RestrictedWitt::new(p).unwrap();
        assert_eq!(crate::text::render(&alg.mul(&alg.d(3), &alg.d(1))), "+ 3 * D_4 + 1 * D_1*D_3");
    }

    #[test]
    fn packing_limits() {
        assert!(RestrictedWitt::new(prime(13)).is_ok());
        assert!(matches!(RestrictedWitt::new(prime(17)), Err(Error::UnsupportedModulus(17))));
        let p = prime(7);
        assert!(RestrictedMonomial::from_exponents(&[7, 0, 0, 0, 0, 0, 0], p).is_none());
        assert!(RestrictedMonomial::from_exponents(&[0; 5], p).is_none());
        let m = mono(&[6, 5, 4, 3, 2, 1, 0], p);
        assert_eq!(m.exponents(), vec![6, 5, 4, 3, 2, 1, 0]);
        assert_eq!(m.last(), Some(5));
    }

    #[test]
    fn dimensions() {
        assert_eq!(basis_size(prime(3)), Integer::from(27));
        assert_eq!(basis_size(prime(5)), Integer::from(3125));
        assert_eq!(basis_size(prime(7)), Integer::from(823_543));
        let mut all: Vec<_> = basis(prime(3)).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 27);
    }

    #[test]
    fn embedding_examples() {
        let p = prime(5);
        let alg = RestrictedWitt::new(p).unwrap();
        assert_eq!(embed_witt(-1, p).unwrap(), alg.d(4).neg());
        assert_eq!(embed_witt(0, p).unwrap(), alg.d(0).sub(&alg.d(4)));
        let (a, b) = (embed_witt(-1, p).unwrap(), embed_witt(0, p).unwrap());
        assert_eq!(alg.commutator(&a, &b), a);
        assert!(alg.commutator(&embed_witt(3, p).unwrap(), &embed_witt(2, p).unwrap()).is_zero());
        assert!(matches!(embed_witt(4, p), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(embed_witt(-2, p), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn witt_isomorphism() {
        for p in [3, 5, 7] {
            let report = verify_witt_iso(prime(p)).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn derivation_model() {
        let p = prime(5);
        assert_eq!(act_derivation(p.elem(4), 1), (p.elem(1), 0));
        for k in 0..5 {
            assert!(act_derivation(p.elem(k), 0).0.is_zero());
        }
        for p in [3, 5, 7] {
            assert!(verify_derivation_model(prime(p)).passed());
        }
    }

    #[test]
    fn p_power() {
        let p = prime(5);
        assert_eq!(p_power_map(p.elem(0)), RestrictedWitt::new(p).unwrap().d(0));
        assert!(p_power_map(p.elem(1)).is_zero());
        for p in [3, 5, 7] {
            assert!(verify_p_power(&RestrictedWitt::new(prime(p)).unwrap()).passed());
        }
    }

    #[test]
    fn rewriting_oracle_agrees_on_all_short_words() {
        let p = prime(3);
        let alg = RestrictedWitt::new(p).unwrap();
        let words = (0..81u32).map(|c| vec![c % 3, c / 3 % 3, c / 9 % 3, c / 27]);
        for w in words {
            let signed: Vec<i64> = w.iter().map(|&x| i64::from(x)).collect();
            let fast = alg.word_product(&signed);
            assert_eq!(fast, rewrite(&w, p, true), "{w:?}");
            assert_eq!(fast, rewrite(&w, p, false), "{w:?}");
        }
    }

    fn small_mono(p: u32) -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0..p, 0..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn associative(p in prop::sample::select(vec![3u32, 5, 7]), a in small_mono(7), b in small_mono(7), c in small_mono(7)) {
            let p = prime(p);
            let alg = RestrictedWitt::new(p).unwrap();
            let w = |v: &Vec<u32>| alg.word_product(&v.iter().map(|&x| i64::from(x % p.get())).collect::<Vec<_>>());
            let (x, y, z) = (w(&a), w(&b), w(&c));
            prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
        }

        #[test]
        fn confluent(p in prop::sample::select(vec![3u32, 5, 7]), word in prop::collection::vec(0u32..7, 0..=4)) {
            let p = prime(p);
            let alg = RestrictedWitt::new(p).unwrap();
            let word: Vec<u32> = word.into_iter().map(|x| x % p.get()).collect();
            let fast = alg.word_product(&word.iter().map(|&x| i64::from(x)).collect::<Vec<_>>());
            prop_assert!(fast.monomials().all(|m| m.exponents().iter().all(|&a| a < p.get())));
            prop_assert_eq!(&fast, &rewrite(&word, p, true));
            prop_assert_eq!(&fast, &rewrite(&word, p, false));
        }

        #[test]
        fn graded(p in prop::sample::select(vec![3u32, 5, 7]), word in prop::collection::vec(0u32..7, 0..=5)) {
            let p = prime(p);
            let alg = RestrictedWitt::new(p).unwrap();
            let word: Vec<i64> = word.into_iter().map(|x| i64::from(x % p.get())).collect();
            let d = (word.iter().sum::<i64>() % i64::from(p.get())) as u32;
            prop_assert!(alg.word_product(&word).monomials().all(|m| m.degree() == d));
        }
    }
}
