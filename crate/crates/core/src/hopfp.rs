//! Characteristic-p Hopf families on U_c(𝔇)[t], one for each nonzero
//! `i ∈ 𝔽_p`, with `h = D_0 / i`, `e = i D_i`:
//!
//! - `Δ(D_k) = D_k ⊗ (1-et)^{k/i} + Σ_{l<p} (-1)^l N(i, k-i, l) h^{(l)} ⊗ (1-et)^{-l} D_{k+li} t^l`
//! - `S(D_k) = -(1-et)^{-k/i} Σ_{l<p} N(i, k-i, l) D_{k+li} (h+1)^{(l)} t^l`
//! - `ε(D_k) = 0`
//!
//! Exponents in `𝔽_p` act through their representative in `[0, p)`, which
//! is consistent because `(1-et)^p = 1 - e^p t^p = 1`. The parameter `t` is
//! kept as an exact polynomial variable or specialized to a residue.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{Algebra, Generated, Lin, TPoly, Tensor};
use crate::exactnum::{int_coeff, n_coeff, reduce, sign, FpElem, Integer, Prime};
use crate::hopf::{Deformed, S1, S2};
use crate::hopf0::Mutation;
use crate::report::{Point, VerificationReport};
use crate::ucdp::{ElementP, RestrictedMonomial, RestrictedWitt};
use crate::uwitt::rising;
use crate::Error;

pub type PolyP = S1<RestrictedWitt>;
pub type PolyP2 = S2<RestrictedWitt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TMode {
    Symbolic,
    Specialized(FpElem),
}

impl std::fmt::Display for TMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TMode::Symbolic => write!(f, "symbolic"),
            TMode::Specialized(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HopfParamsP {
    pub p: Prime,
    pub i: FpElem,
    pub t: TMode,
    pub mutation: Option<Mutation>,
}

impl HopfParamsP {
    pub fn new(p: u32, i: i64, t: TMode) -> Result<Self, Error> {
        let p = Prime::new(p)?;
        if p.get() > crate::ucdp::MAX_MODULUS {
            return Err(Error::UnsupportedModulus(p.get()));
        }
        let i = p.elem(i);
        if i.is_zero() {
            return Err(Error::ZeroI);
        }
        if let TMode::Specialized(c) = t {
            if c.modulus() != p {
                return Err(Error::ModulusMismatch(p.get(), c.modulus().get()));
            }
        }
        Ok(HopfParamsP { p, i, t, mutation: None })
    }

    pub fn with_mutation(mut self, m: Mutation) -> Self {
        self.mutation = Some(m);
        self
    }

    pub fn with_t(mut self, t: TMode) -> Self {
        self.t = t;
        self
    }

    pub fn point(&self) -> Point {
        Point::new().with("p", self.p.get()).with("i", self.i).with("t", self.t)
    }
}

/// Working context: U_c(𝔇) and its exact polynomial tensor algebras.
#[derive(Clone)]
pub struct QuantumP {
    pub params: HopfParamsP,
    pub alg: Arc<RestrictedWitt>,
    pub s1: TPoly<Arc<RestrictedWitt>>,
    pub s2: TPoly<Tensor<RestrictedWitt, 2>>,
}

impl QuantumP {
    pub fn new(params: HopfParamsP) -> Self {
        let alg = RestrictedWitt::new(params.p).expect("modulus validated by params");
        Self::with_algebra(params, alg)
    }

    pub fn with_algebra(params: HopfParamsP, alg: Arc<RestrictedWitt>) -> Self {
        QuantumP {
            params,
            s1: TPoly::exact(alg.clone()),
            s2: TPoly::exact(Tensor::new(alg.clone())),
            alg,
        }
    }

    fn p(&self) -> Prime {
        self.params.p
    }

    fn fp(&self, n: i64) -> FpElem {
        self.p().elem(n)
    }

    fn i(&self) -> FpElem {
        self.params.i
    }

    pub fn h(&self) -> ElementP {
        self.alg.d(0).scale(&self.i().inverse().expect("i is nonzero"))
    }

    pub fn e(&self) -> ElementP {
        self.alg.d(i64::from(self.i().value())).scale(&self.i())
    }

    fn e_pow(&self, n: u32) -> ElementP {
        self.alg.pow(&self.e(), n)
    }

    /// `1 - e t`.
    pub fn one_minus_et(&self) -> PolyP {
        self.s1.one().sub(&self.s1.monomial(&self.e(), 1))
    }

    /// `α = (1 - e t)^{-1} = Σ_{n<p} e^n t^n`.
    pub fn alpha(&self) -> PolyP {
        let mut out = Lin::zero();
        for n in 0..self.p().get() {
            out.add_assign(&self.s1.monomial(&self.e_pow(n), n));
        }
        out
    }

    /// `(1 - e t)^m` through the representative of `m` in `[0, p)`.
    pub fn power_fp(&self, m: FpElem) -> PolyP {
        self.s1.pow(&self.one_minus_et(), m.value())
    }

    /// `h^{(l)} = h (h+1) ... (h+l-1)`.
    pub fn h_rising(&self, l: u32) -> ElementP {
        rising(&*self.alg, &self.h(), l, |j| self.fp(i64::from(j)))
    }

    /// `(h+1)^{(l)} = (h+1) ... (h+l)`.
    pub fn h_plus_one_rising(&self, l: u32) -> ElementP {
        rising(&*self.alg, &self.h(), l, |j| self.fp(i64::from(j) + 1))
    }

    /// `N(i, k - i, l)`, with the configured mutation applied.
    fn coeff(&self, k: FpElem, l: u32) -> (FpElem, i64) {
        let mut c = n_coeff(self.i(), k - self.i(), l).expect("shared modulus");
        let mut s = sign(l);
        match self.params.mutation {
            Some(Mutation::FlipSign { l: at }) if at == l => s = -s,
            Some(Mutation::BumpCoeff { l: at }) if at == l => c = c + self.fp(1),
            _ => {}
        }
        (c, s)
    }

    fn k_over_i(&self, k: FpElem) -> FpElem {
        k * self.i().inverse().expect("i is nonzero")
    }

    /// The coproduct of `D_k` as a polynomial in `t`.
    pub fn coproduct_symbolic(&self, k: FpElem) -> PolyP2 {
        let dk = self.alg.d(i64::from(k.value()));
        let mut out = self.s2.outer(&self.s1.lift(&dk), &self.power_fp(self.k_over_i(k)));
        for l in 0..self.p().get() {
            let (c, s) = self.coeff(k, l);
            if c.is_zero() {
                continue;
            }
            let index = i64::from((k + self.i() * self.fp(i64::from(l))).value());
            let left = self.s1.monomial(&self.h_rising(l), l);
            let right = self.s1.mul(&self.power_fp(-self.fp(i64::from(l))), &self.s1.lift(&self.alg.d(index)));
            out.add_scaled(&self.s2.outer(&left, &right), &(c * self.fp(s)));
        }
        out
    }

    /// The antipode of `D_k` as a polynomial in `t`, operand order as in
    /// `D_{k+li} (h+1)^{(l)}`.
    pub fn antipode_symbolic(&self, k: FpElem) -> PolyP {
        let mut sum = Lin::zero();
        for l in 0..self.p().get() {
            let c = n_coeff(self.i(), k - self.i(), l).expect("shared modulus");
            if c.is_zero() {
                continue;
            }
            let index = i64::from((k + self.i() * self.fp(i64::from(l))).value());
            let term = self.alg.mul(&self.alg.d(index), &self.h_plus_one_rising(l));
            sum.add_scaled(&self.s1.monomial(&term, l), &c);
        }
        self.s1.mul(&self.power_fp(-self.k_over_i(k)), &sum).neg()
    }

    fn specialize1(&self, x: &PolyP) -> PolyP {
        match self.params.t {
            TMode::Symbolic => x.clone(),
            TMode::Specialized(c) => self.s1.specialize(x, &c),
        }
    }

    fn specialize2(&self, x: &PolyP2) -> PolyP2 {
        match self.params.t {
            TMode::Symbolic => x.clone(),
            TMode::Specialized(c) => self.s2.specialize(x, &c),
        }
    }

    /// `Δ(D_k)`, specialized if the parameters ask for it.
    pub fn coproduct_p(&self, k: FpElem) -> PolyP2 {
        self.specialize2(&self.coproduct_symbolic(k))
    }

    pub fn antipode_p(&self, k: FpElem) -> PolyP {
        self.specialize1(&self.antipode_symbolic(k))
    }

    pub fn deformed(&self) -> Deformed<RestrictedWitt> {
        let (cop, anti) = (self.clone(), self.clone());
        let p = self.p();
        Deformed::new(
            self.alg.clone(),
            None,
            move |k| cop.coproduct_p(p.elem(i64::from(k))),
            move |k| anti.antipode_p(p.elem(i64::from(k))),
        )
    }

    fn generators(&self) -> Vec<u32> {
        (0..self.p().get()).collect()
    }

    /// The defining relations of U_c(𝔇) hold for the images under Δ and S.
    pub fn verify_relations_preserved(&self) -> VerificationReport {
        let hopf = self.deformed();
        let gens = self.generators();
        let p = self.p().get();
        let pairs: Vec<(u32, u32)> = gens.iter().flat_map(|&k| gens.iter().map(move |&l| (k, l))).filter(|(k, l)| k < l).collect();
        let mut reports: Vec<VerificationReport> = pairs
            .par_iter()
            .map(|&(k, l)| {
                let point = self.params.point().with("k", k).with("l", l);
                let mut report = VerificationReport::new();
                let c = self.fp(i64::from(l) - i64::from(k));
                let (dk, dl) = (hopf.delta_mono(&self.alg.gen_mono(k)), hopf.delta_mono(&self.alg.gen_mono(l)));
                let dkl = hopf.delta_mono(&self.alg.gen_mono((k + l) % p));
                report.check_eq("[Δ(D_k), Δ(D_l)] = (l-k) Δ(D_{k+l})", &point, &self.s2.commutator(&dk, &dl), &dkl.scale(&c));
                let (sk, sl) = (hopf.antipode_mono(&self.alg.gen_mono(k)), hopf.antipode_mono(&self.alg.gen_mono(l)));
                let skl = hopf.antipode_mono(&self.alg.gen_mono((k + l) % p));
                report.check_eq("[S(D_l), S(D_k)] = (l-k) S(D_{k+l})", &point, &self.s1.commutator(&sl, &sk), &skl.scale(&c));
                report
            })
            .collect();
        let powers: Vec<VerificationReport> = gens
            .par_iter()
            .map(|&k| {
                let point = self.params.point().with("k", k);
                let mut report = VerificationReport::new();
                let dk = hopf.delta_mono(&self.alg.gen_mono(k));
                let sk = hopf.antipode_mono(&self.alg.gen_mono(k));
                let (d_target, s_target) = if k == 0 { ((*dk).clone(), (*sk).clone()) } else { (Lin::zero(), Lin::zero()) };
                report.check_eq("Δ(D_k)^p = Δ(D_k^[p])", &point, &self.s2.pow(&dk, p), &d_target);
                report.check_eq("S(D_k)^p = S(D_k^[p])", &point, &self.s1.pow(&sk, p), &s_target);
                report
            })
            .collect();
        reports.extend(powers);
        reports.into_iter().collect()
    }

    /// Coassociativity, counit and antipode laws on every generator, and
    /// compatibility with products of generator pairs.
    pub fn verify_hopf_p(&self) -> VerificationReport {
        let hopf = self.deformed();
        let gens = self.generators();
        let singles: Vec<VerificationReport> = gens
            .par_iter()
            .map(|&k| {
                let mut report = VerificationReport::new();
                let x = hopf.gen(k);
                let point = self.params.point().with("k", k);
                hopf.check_axioms(&x, &point, &mut report);
                report.check_eq("counit ε(D_k) = 0", &point, &hopf.counit(&x), &Lin::zero());
                report.check_eq(
                    "t⁰ slice is undeformed",
                    &point,
                    &self.s2.slice(&self.coproduct_symbolic(self.fp(i64::from(k))), 0),
                    &self.primitive(k),
                );
                report
            })
            .collect();
        let pairs: Vec<VerificationReport> = gens
            .par_iter()
            .map(|&k| {
                let mut report = VerificationReport::new();
                for &l in &gens {
                    let point = self.params.point().with("k", k).with("l", l);
                    hopf.check_pair(&hopf.gen(k), &hopf.gen(l), &point, &mut report);
                }
                report
            })
            .collect();
        singles.into_iter().chain(pairs).collect()
    }

    /// `D_k ⊗ 1 + 1 ⊗ D_k`.
    fn primitive(&self, k: u32) -> Lin<FpElem, [RestrictedMonomial; 2]> {
        let (g, one) = (self.alg.gen_mono(k), self.alg.unit_mono());
        [([g, one], self.fp(1)), ([one, g], self.fp(1))].into_iter().collect()
    }

    /// Relations of the subalgebra generated by `h` and `e`, checked with
    /// symbolic `t` whatever the parameters say.
    pub fn radford_check(&self) -> VerificationReport {
        let q = QuantumP::with_algebra(self.params.with_t(TMode::Symbolic), self.alg.clone());
        let hopf = q.deformed();
        let point = q.params.point();
        let p = q.p().get();
        let (h, alpha) = (q.s1.lift(&q.h()), q.alpha());
        let s2 = &q.s2;
        let mut report = VerificationReport::new();

        let alpha2 = q.s1.mul(&alpha, &alpha);
        report.check_eq("[h, α] = α² - α", &point, &q.s1.commutator(&h, &alpha), &alpha2.sub(&alpha));
        report.check_eq("h^p = h", &point, &q.s1.pow(&h, p), &h);
        report.check_eq("α^p = 1", &point, &q.s1.pow(&alpha, p), &q.s1.one());
        report.check_eq("α (1 - et) = 1", &point, &q.s1.mul(&alpha, &q.one_minus_et()), &q.s1.one());

        let delta_h = hopf.delta(&h);
        let expected = s2.outer(&h, &alpha).add(&s2.outer(&q.s1.one(), &h));
        report.check_eq("Δ(h) = h ⊗ α + 1 ⊗ h", &point, &delta_h, &expected);
        report.check_eq("Δ(α) = α ⊗ α", &point, &hopf.delta(&alpha), &s2.outer(&alpha, &alpha));
        report.check_eq("S(h) = -h α⁻¹", &point, &hopf.antipode(&h), &q.s1.mul(&h, &q.one_minus_et()).neg());
        report.check_eq("ε(h) = 0", &point, &hopf.counit(&h), &Lin::zero());

        let e = q.s1.lift(&q.e());
        let inside = |m: &RestrictedMonomial| (0..p).all(|k| k == 0 || k == q.i().value() || m.exponent(k) == 0);
        let images2 = [hopf.delta(&h), hopf.delta(&e)];
        let images1 = [hopf.antipode(&h), hopf.antipode(&e)];
        let closed = images2.iter().all(|x| x.monomials().all(|(_, [a, b])| inside(a) && inside(b)))
            && images1.iter().all(|x| x.monomials().all(|(_, a)| inside(a)));
        report.check("⟨h, e⟩ closed under Δ and S", &point, closed, || "support leaves span{D_0^a D_i^b}".to_string());
        report
    }

    /// First mismatch between `S(h)` and `h α⁻¹` without the sign. The
    /// antipode law `S(h) α + h = 0` forces `S(h) = -h α⁻¹`, so the unsigned
    /// form already fails in degree 0, where `S(h) = -h`.
    pub fn unsigned_antipode_of_h_mismatch(&self) -> Option<String> {
        let q = QuantumP::with_algebra(self.params.with_t(TMode::Symbolic), self.alg.clone());
        let h = q.s1.lift(&q.h());
        crate::report::mismatch(&q.deformed().antipode(&h), &q.s1.mul(&h, &q.one_minus_et()))
    }

    /// Whether `Δ(D_k) = Δ^op(D_k)` under the configured `t`.
    pub fn is_cocommutative(&self, k: FpElem) -> bool {
        let d = self.coproduct_p(k);
        d == self.s2.flip(&d)
    }
}

/// Evaluate a polynomial at `t = c`.
pub fn specialize_t<B: Algebra<C = FpElem>>(poly: &TPoly<B>, x: &crate::algebra::Series<B>, c: FpElem) -> crate::algebra::Series<B> {
    poly.specialize(x, &c)
}

/// `ε`: kills every `D_k`.
pub fn counit_p(x: &ElementP, p: Prime) -> FpElem {
    x.get(&RestrictedMonomial::one(p)).copied().unwrap_or_else(|| p.elem(0))
}

pub fn alpha(params: HopfParamsP) -> PolyP {
    QuantumP::new(params).alpha()
}

pub fn coproduct_p(k: FpElem, params: HopfParamsP) -> PolyP2 {
    QuantumP::new(params).coproduct_p(k)
}

pub fn antipode_p(k: FpElem, params: HopfParamsP) -> PolyP {
    QuantumP::new(params).antipode_p(k)
}

pub fn verify_relations_preserved(params: HopfParamsP) -> VerificationReport {
    QuantumP::new(params).verify_relations_preserved()
}

/// The axiom suite with symbolic `t` and at each requested residue.
pub fn verify_hopf_p(params: HopfParamsP, t_values: &[FpElem]) -> VerificationReport {
    let alg = RestrictedWitt::new(params.p).expect("modulus validated by params");
    let modes: Vec<TMode> = std::iter::once(TMode::Symbolic).chain(t_values.iter().map(|&c| TMode::Specialized(c))).collect();
    modes.into_iter().map(|t| QuantumP::with_algebra(params.with_t(t), alg.clone()).verify_hopf_p()).collect()
}

pub fn radford_check(params: HopfParamsP) -> VerificationReport {
    QuantumP::new(params).radford_check()
}

/// Integral structure constants `C(i, k - i, l)` reduce to `N(i, k - i, l)`
/// for every `i ≠ 0`, every `k` and `l < p`.
pub fn verify_bridge(p: Prime) -> VerificationReport {
    let n = i64::from(p.get());
    let mut report = VerificationReport::new();
    for i in 1..n {
        for k in 0..n {
            let mut bad = None;
            for l in 0..p.get() {
                let lifted = int_coeff(&Integer::from(i), &Integer::from(k - i), l).expect("integral");
                let residue = n_coeff(p.elem(i), p.elem(k - i), l).expect("shared modulus");
                if reduce(&lifted, p) != residue {
                    bad = Some(format!("l={l}: {} vs {residue}", reduce(&lifted, p)));
                    break;
                }
            }
            report.record("C(i, k-i, l) mod p = N(i, k-i, l)", &Point::new().with("p", p.get()).with("i", i).with("k", k), bad);
        }
    }
    report
}
