//! Characteristic-0 quantization of the triangular structure `r = L_0 ⊗ L_i`
//! on U(W), computed in `U(W)^{⊗n}[[t]]` truncated at `t^N`.
//!
//! Two independent routes are provided for the deformed coproduct and
//! antipode:
//! - closed forms, built from `(1 - e t)^{k/i}` (generalized binomial
//!   series), `(1 - e t)^{-l}` (powers of the geometric series) and the
//!   integral coefficients `C(i, k - i, l)`;
//! - conjugation by the twist `F = Σ_r h^{(r)} ⊗ e^r t^r / r!`, i.e.
//!   `Δ = F^{-1} Δ₀ F` and `S = u^{-1} S₀ u` with `u = m (S₀ ⊗ id)(F)`.
//!
//! The verifiers compare them coefficientwise in exact arithmetic.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{Algebra, Generated, Lin, TPoly, Tensor};
use crate::exactnum::{binomial, factorial, gen_binomial, int_coeff, rat, sign, Integer, Rational};
use crate::hopf::{Deformed, S1, S2, S3};
use crate::report::{Point, VerificationReport};
use crate::uwitt::{d_power, degree, e_elem, h_plus_one_rising, h_rising, Element, Grading, PbwMonomial, UWitt};
use crate::Error;

pub type TensorElement = Lin<Rational, [PbwMonomial; 2]>;
pub type TensorElement3 = Lin<Rational, [PbwMonomial; 3]>;
pub type Series1 = S1<UWitt>;
pub type Series2 = S2<UWitt>;
pub type Series3 = S3<UWitt>;

/// Deliberate corruption of one summand of the closed-form coproduct, used
/// to confirm that the verifiers can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Negate the `l`-th summand.
    FlipSign { l: u32 },
    /// Replace the integral coefficient `C` of the `l`-th summand by `C + 1`.
    BumpCoeff { l: u32 },
}

impl Mutation {
    pub fn l(self) -> u32 {
        match self {
            Mutation::FlipSign { l } | Mutation::BumpCoeff { l } => l,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HopfParams {
    pub i: i64,
    pub order: u32,
    pub mutation: Option<Mutation>,
}

pub const DEFAULT_ORDER: u32 = 4;

impl HopfParams {
    pub fn new(i: i64, order: u32) -> Result<Self, Error> {
        if i == 0 {
            return Err(Error::ZeroI);
        }
        Ok(HopfParams { i, order, mutation: None })
    }

    pub fn with_mutation(mut self, m: Mutation) -> Self {
        self.mutation = Some(m);
        self
    }

    fn point(&self) -> Point {
        Point::new().with("i", self.i).with("N", self.order)
    }
}

/// Working context: U(W) and its truncated tensor-series algebras.
#[derive(Clone)]
pub struct Quantum {
    pub params: HopfParams,
    pub alg: Arc<UWitt>,
    pub s1: TPoly<Arc<UWitt>>,
    pub s2: TPoly<Tensor<UWitt, 2>>,
    pub s3: TPoly<Tensor<UWitt, 3>>,
}

fn l_gen(k: i64) -> Element {
    Lin::term(PbwMonomial::generator(k), Rational::one())
}

fn int_rat(n: Integer) -> Rational {
    Rational::from_integer(n)
}

impl Quantum {
    pub fn new(params: HopfParams) -> Self {
        Self::with_algebra(params, UWitt::new())
    }

    pub fn with_algebra(params: HopfParams, alg: Arc<UWitt>) -> Self {
        let n = params.order;
        Quantum {
            params,
            s1: TPoly::truncated(alg.clone(), n),
            s2: TPoly::truncated(Tensor::new(alg.clone()), n),
            s3: TPoly::truncated(Tensor::new(alg.clone()), n),
            alg,
        }
    }

    fn i(&self) -> i64 {
        self.params.i
    }

    fn n(&self) -> u32 {
        self.params.order
    }

    /// `L_i^n` with the scalar `i^n`, i.e. `e^n`.
    fn e_pow(&self, n: u32) -> Element {
        self.alg.pow(&e_elem(self.i()), n)
    }

    /// `(1 - e t)^q = Σ_n binom(q, n) (-e)^n t^n`.
    pub fn binom_series(&self, q: &Rational) -> Series1 {
        let mut out = Lin::zero();
        for n in 0..=self.n() {
            let c = gen_binomial(q, n) * rat(sign(n));
            out.add_scaled(&self.s1.monomial(&self.e_pow(n), n), &c);
        }
        out
    }

    /// `α = (1 - e t)^{-1} = Σ_n e^n t^n`.
    pub fn geometric(&self) -> Series1 {
        let mut out = Lin::zero();
        for n in 0..=self.n() {
            out.add_assign(&self.s1.monomial(&self.e_pow(n), n));
        }
        out
    }

    /// `(1 - e t)^{-l}` as the `l`-th power of the geometric series.
    pub fn geometric_power(&self, l: u32) -> Series1 {
        self.s1.pow(&self.geometric(), l)
    }

    /// `F = Σ_r (1/r!) h^{(r)} ⊗ e^r t^r`.
    pub fn twist(&self) -> Series2 {
        let mut out = Lin::zero();
        for r in 0..=self.n() {
            let left = h_rising(&self.alg, r, self.i());
            let right = self.e_pow(r);
            let c = Rational::new(Integer::one(), factorial(r));
            let term = self.s2.outer(&self.s1.monomial(&left, r), &self.s1.lift(&right));
            out.add_scaled(&term, &c);
        }
        out
    }

    pub fn twist_inverse(&self) -> Series2 {
        self.s2.invert(&self.twist()).expect("twist has unit leading term")
    }

    /// Undeformed coproduct of a monomial, `Δ₀(L_k) = L_k ⊗ 1 + 1 ⊗ L_k`.
    pub fn delta0_mono(&self, m: &PbwMonomial) -> TensorElement {
        let t2 = &self.s2.base;
        let mut acc = t2.one();
        for k in self.alg.word(m) {
            let g = PbwMonomial::generator(k);
            let primitive: TensorElement = [([g.clone(), PbwMonomial::one()], Rational::one()), ([PbwMonomial::one(), g], Rational::one())]
                .into_iter()
                .collect();
            acc = t2.mul(&acc, &primitive);
        }
        acc
    }

    pub fn delta0(&self, x: &Element) -> TensorElement {
        let mut out = Lin::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.delta0_mono(m), c);
        }
        out
    }

    /// `S₀(L_{k_1} ... L_{k_n}) = (-1)^n L_{k_n} ... L_{k_1}`.
    pub fn s0(&self, x: &Element) -> Element {
        let mut out = Lin::zero();
        for (m, c) in x.iter() {
            let mut word = self.alg.word(m);
            word.reverse();
            let image = crate::uwitt::normal_order(&self.alg, &word);
            out.add_scaled(&image, &(c * rat(sign(word.len() as u32))));
        }
        out
    }

    /// Closed-form deformed coproduct of `L_k`:
    /// `L_k ⊗ (1-et)^{k/i} + Σ_l (-1)^l C(i, k-i, l) h^{(l)} ⊗ (1-et)^{-l} L_{k+li} t^l`.
    pub fn coproduct_closed(&self, k: i64) -> Series2 {
        let i = self.i();
        let mut out = self.s2.outer(&self.s1.lift(&l_gen(k)), &self.binom_series(&Rational::new(k.into(), i.into())));
        for l in 0..=self.n() {
            let mut c = int_coeff(&Integer::from(i), &Integer::from(k - i), l).expect("integral coefficient");
            let mut s = sign(l);
            match self.params.mutation {
                Some(Mutation::FlipSign { l: at }) if at == l => s = -s,
                Some(Mutation::BumpCoeff { l: at }) if at == l => c += 1,
                _ => {}
            }
            if c.is_zero() {
                continue;
            }
            let left = self.s1.monomial(&h_rising(&self.alg, l, i), l);
            let right = self.s1.mul(&self.geometric_power(l), &self.s1.lift(&l_gen(k + i64::from(l) * i)));
            out.add_scaled(&self.s2.outer(&left, &right), &(int_rat(c) * rat(s)));
        }
        out
    }

    /// `F^{-1} Δ₀(x) F`.
    pub fn coproduct_twist(&self, x: &Element) -> Series2 {
        let inner = self.s2.lift(&self.delta0(x));
        self.s2.mul(&self.s2.mul(&self.twist_inverse(), &inner), &self.twist())
    }

    /// `u = m (S₀ ⊗ id)(F)`.
    pub fn u_element(&self) -> Series1 {
        let mut out = Lin::zero();
        for ((d, [a, b]), c) in self.twist().iter() {
            let left = self.s0(&Lin::term(a.clone(), Rational::one()));
            let prod = self.alg.mul(&left, &Lin::term(b.clone(), Rational::one()));
            out.add_scaled(&self.s1.monomial(&prod, *d), c);
        }
        out
    }

    /// `u^{-1} S₀(x) u`.
    pub fn antipode_twist(&self, x: &Element) -> Series1 {
        let u = self.u_element();
        let u_inv = self.s1.invert(&u).expect("u has unit leading term");
        self.s1.mul(&self.s1.mul(&u_inv, &self.s1.lift(&self.s0(x))), &u)
    }

    /// Closed-form antipode of `L_k`:
    /// `-(1-et)^{-k/i} Σ_l C(i, k-i, l) L_{k+li} (h+1)^{(l)} t^l`.
    pub fn antipode_closed(&self, k: i64) -> Series1 {
        let i = self.i();
        let mut sum = Lin::zero();
        for l in 0..=self.n() {
            let c = int_coeff(&Integer::from(i), &Integer::from(k - i), l).expect("integral coefficient");
            if c.is_zero() {
                continue;
            }
            let term = self.alg.mul(&l_gen(k + i64::from(l) * i), &h_plus_one_rising(&self.alg, l, i));
            sum.add_scaled(&self.s1.monomial(&term, l), &int_rat(c));
        }
        self.s1.mul(&self.binom_series(&Rational::new((-k).into(), i.into())), &sum).neg()
    }

    /// `S(x) = (1-et)^{-|x|/i} Σ_n d^{(n)}(S₀(x)) (h+1)^{(n)} t^n` for homogeneous `x`.
    pub fn antipode_general(&self, x: &Element) -> Result<Series1, Error> {
        let deg = match degree(x) {
            Grading::Zero => return Ok(Lin::zero()),
            Grading::Homogeneous(d) => d,
            Grading::Inhomogeneous => return Err(Error::Inhomogeneous),
        };
        let i = self.i();
        let s0x = self.s0(x);
        let mut sum = Lin::zero();
        for n in 0..=self.n() {
            let dn = d_power(&self.alg, &s0x, n, i);
            if dn.is_zero() {
                continue;
            }
            let term = self.alg.mul(&dn, &h_plus_one_rising(&self.alg, n, i));
            sum.add_assign(&self.s1.monomial(&term, n));
        }
        Ok(self.s1.mul(&self.binom_series(&Rational::new((-deg).into(), i.into())), &sum))
    }

    /// Semiclassical cobracket `δ(L_k)`, computed as the `t`-coefficient of
    /// `Δ - Δ^op` and as `[Δ₀(L_k), r - r^{21}]`; the two must agree.
    pub fn cobracket_semiclassical(&self, k: i64) -> Result<TensorElement, Error> {
        let first_order = Quantum::with_algebra(HopfParams { order: 1, ..self.params }, self.alg.clone());
        let delta = first_order.coproduct_closed(k);
        let route_a = first_order.s2.slice(&delta.sub(&first_order.s2.flip(&delta)), 1);
        let route_b = self.cobracket_from_r(k);
        if route_a != route_b {
            return Err(Error::Mismatch(crate::report::mismatch(&route_a, &route_b).unwrap_or_default()));
        }
        Ok(route_a)
    }

    /// `[Δ₀(L_k), r - r^{21}]` with `r = L_0 ⊗ L_i`.
    pub fn cobracket_from_r(&self, k: i64) -> TensorElement {
        let t2 = &self.s2.base;
        let r: TensorElement = Lin::term([PbwMonomial::generator(0), PbwMonomial::generator(self.i())], Rational::one());
        let r21 = r.map_monos(|[a, b]| [b.clone(), a.clone()]);
        t2.commutator(&self.delta0(&l_gen(k)), &r.sub(&r21))
    }

    /// `(Δ₀ ⊗ id)(F)` and `(id ⊗ Δ₀)(F)` as rank-3 series.
    fn twist_coproducts(&self, f: &Series2) -> (Series3, Series3) {
        let mut left = Series3::zero();
        let mut right = Series3::zero();
        for ((d, [a, b]), c) in f.iter() {
            for ([u, v], k) in self.delta0_mono(a).iter() {
                left.add_term((*d, [u.clone(), v.clone(), b.clone()]), c * k);
            }
            for ([u, v], k) in self.delta0_mono(b).iter() {
                right.add_term((*d, [a.clone(), u.clone(), v.clone()]), c * k);
            }
        }
        (left, right)
    }

    /// `F ⊗ 1` and `1 ⊗ F`.
    fn twist_legs(&self, f: &Series2) -> (Series3, Series3) {
        let one = PbwMonomial::one();
        let f12 = f.map_monos(|(d, [a, b])| (*d, [a.clone(), b.clone(), one.clone()]));
        let f23 = f.map_monos(|(d, [a, b])| (*d, [one.clone(), a.clone(), b.clone()]));
        (f12, f23)
    }

    /// Twist identities: the cocycle condition
    /// `(Δ₀ ⊗ id)(F) (F ⊗ 1) = (id ⊗ Δ₀)(F) (1 ⊗ F)` under which
    /// `F^{-1} Δ₀ F` is coassociative, the counit normalization
    /// `(ε ⊗ id)(F) = (id ⊗ ε)(F) = 1`, and invertibility.
    pub fn cocycle_check(&self) -> VerificationReport {
        let f = self.twist();
        let (d_left, d_right) = self.twist_coproducts(&f);
        let (f12, f23) = self.twist_legs(&f);
        let lhs = self.s3.mul(&d_left, &f12);
        let rhs = self.s3.mul(&d_right, &f23);

        let point = self.params.point();
        let mut report = VerificationReport::new();
        report.check_eq("twist cocycle (Δ₀⊗id)(F)(F⊗1) = (id⊗Δ₀)(F)(1⊗F)", &point, &lhs, &rhs);
        let counit_left: Series1 = f.iter().filter(|((_, [a, _]), _)| a.is_one()).map(|((d, [_, b]), c)| ((*d, b.clone()), c.clone())).collect();
        let counit_right: Series1 = f.iter().filter(|((_, [_, b]), _)| b.is_one()).map(|((d, [a, _]), c)| ((*d, a.clone()), c.clone())).collect();
        report.check_eq("twist counit (ε⊗id)F = 1", &point, &counit_left, &self.s1.one());
        report.check_eq("twist counit (id⊗ε)F = 1", &point, &counit_right, &self.s1.one());
        let product = self.s2.mul(&f, &self.twist_inverse());
        report.check_eq("twist invertible", &point, &product, &self.s2.one());
        report
    }

    /// The mirrored arrangement `(Δ₀ ⊗ id)(F) (1 ⊗ F) = (F ⊗ 1)(id ⊗ Δ₀)(F)`.
    /// Returns the first mismatch, if any; it is already violated at order
    /// `t`, where the two sides are `h⊗1⊗e + 2·1⊗h⊗e` and `2·h⊗e⊗1 + h⊗1⊗e`.
    pub fn mirrored_cocycle_mismatch(&self) -> Option<String> {
        let f = self.twist();
        let (d_left, d_right) = self.twist_coproducts(&f);
        let (f12, f23) = self.twist_legs(&f);
        crate::report::mismatch(&self.s3.mul(&d_left, &f23), &self.s3.mul(&f12, &d_right))
    }

    /// The deformed Hopf structure given by the closed forms on generators.
    pub fn deformed(&self) -> Deformed<UWitt> {
        let (cop, anti) = (self.clone(), self.clone());
        Deformed::new(
            self.alg.clone(),
            Some(self.n()),
            move |k| cop.coproduct_closed(k),
            move |k| anti.antipode_closed(k),
        )
    }

    /// Hopf axioms on the generators `L_k`, `k ∈ ks`, and Δ/S compatibility
    /// with products and brackets on all pairs.
    pub fn verify_hopf0(&self, ks: &[i64]) -> VerificationReport {
        let hopf = self.deformed();
        let mut report = VerificationReport::new();
        for &k in ks {
            let x = hopf.gen(k);
            let point = self.params.point().with("k", k);
            hopf.check_axioms(&x, &point, &mut report);
            report.check_eq("counit ε(L_k) = 0", &point, &hopf.counit(&x), &Lin::zero());
        }
        for &k in ks {
            for &l in ks {
                let point = self.params.point().with("k", k).with("l", l);
                hopf.check_pair(&hopf.gen(k), &hopf.gen(l), &point, &mut report);
            }
        }
        report
    }

    /// Closed-form coproduct against twist conjugation.
    pub fn verify_coproduct_routes(&self, ks: &[i64]) -> VerificationReport {
        let mut report = VerificationReport::new();
        for &k in ks {
            let point = self.params.point().with("k", k);
            report.check_eq("Δ closed = F⁻¹Δ₀F", &point, &self.coproduct_closed(k), &self.coproduct_twist(&l_gen(k)));
        }
        report
    }

    /// Closed-form, `u`-conjugation and homogeneous-formula antipodes on the
    /// generators in `ks` and on every two-generator product drawn from them.
    pub fn verify_antipode_routes(&self, ks: &[i64]) -> VerificationReport {
        let hopf = self.deformed();
        let mut report = VerificationReport::new();
        for &k in ks {
            let point = self.params.point().with("k", k);
            let twisted = self.antipode_twist(&l_gen(k));
            report.check_eq("S closed = u⁻¹S₀u", &point, &self.antipode_closed(k), &twisted);
            let general = self.antipode_general(&l_gen(k)).expect("generators are homogeneous");
            report.check_eq("S general = u⁻¹S₀u", &point, &general, &twisted);
        }
        for &k in ks {
            for &l in ks {
                let point = self.params.point().with("word", format!("L{}*L{}", crate::uwitt::sub_index(k), crate::uwitt::sub_index(l)));
                let x = crate::uwitt::normal_order(&self.alg, &[k, l]);
                let twisted = self.antipode_twist(&x);
                let general = self.antipode_general(&x).expect("products of generators are homogeneous");
                report.check_eq("S general = u⁻¹S₀u", &point, &general, &twisted);
                report.check_eq("S extended = u⁻¹S₀u", &point, &hopf.antipode(&self.s1.lift(&x)), &twisted);
            }
        }
        report
    }

    pub fn verify_semiclassical(&self, ks: &[i64]) -> VerificationReport {
        let mut report = VerificationReport::new();
        for &k in ks {
            let point = Point::new().with("i", self.i()).with("k", k);
            let outcome = self.cobracket_semiclassical(k);
            report.check("semiclassical limit = [Δ₀, r - r²¹]", &point, outcome.is_ok(), || match outcome {
                Err(e) => e.to_string(),
                Ok(_) => String::new(),
            });
        }
        report
    }

    /// Whether `Δ(L_k) = Δ^op(L_k)` up to the truncation order. Fails at
    /// order `t` for every `k ≠ i`; `Δ(e) = e ⊗ (1 - et) + 1 ⊗ e` is
    /// cocommutative.
    pub fn is_cocommutative(&self, k: i64) -> bool {
        let d = self.coproduct_closed(k);
        d == self.s2.flip(&d)
    }
}

/// `ε`: kills every generator, `ε(1) = 1`.
pub fn counit(x: &Element) -> Rational {
    x.get(&PbwMonomial::one()).cloned().unwrap_or_else(Rational::zero)
}

pub fn twist(params: HopfParams) -> Series2 {
    Quantum::new(params).twist()
}

pub fn cocycle_check(params: HopfParams) -> VerificationReport {
    Quantum::new(params).cocycle_check()
}

pub fn coproduct_closed(k: i64, params: HopfParams) -> Series2 {
    Quantum::new(params).coproduct_closed(k)
}

pub fn coproduct_twist(x: &Element, params: HopfParams) -> Series2 {
    Quantum::new(params).coproduct_twist(x)
}

pub fn antipode_closed(k: i64, params: HopfParams) -> Series1 {
    Quantum::new(params).antipode_closed(k)
}

pub fn antipode_twist(x: &Element, params: HopfParams) -> Series1 {
    Quantum::new(params).antipode_twist(x)
}

pub fn antipode_general(x: &Element, params: HopfParams) -> Result<Series1, Error> {
    Quantum::new(params).antipode_general(x)
}

pub fn cobracket_semiclassical(k: i64, i: i64) -> Result<TensorElement, Error> {
    Quantum::new(HopfParams::new(i, 1)?).cobracket_semiclassical(k)
}

pub fn verify_hopf0(params: HopfParams, ks: &[i64]) -> VerificationReport {
    Quantum::new(params).verify_hopf0(ks)
}

/// Mixed rising-factorial coefficient check used by tests: the binomial
/// `C(l + n - 1, n)` of `(1-et)^{-l}`.
pub fn geometric_coeff(l: u32, n: u32) -> Integer {
    if l == 0 {
        return if n == 0 { Integer::one() } else { Integer::zero() };
    }
    binomial(u64::from(l + n - 1), u64::from(n))
}
