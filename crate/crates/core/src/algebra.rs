//! Sparse linear combinations over a monomial basis and the generic
//! constructions built on them: tensor powers and (optionally truncated)
//! polynomials in the deformation parameter `t`.

use std::collections::hash_map::Entry;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use rustc_hash::FxHashMap;

/// Scalars of an algebra. Construction of zero and one lives on the
/// algebra, since prime-field residues carry their modulus.
pub trait Coeff: Clone + PartialEq + Debug + std::fmt::Display + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

pub trait Mono: Clone + Eq + Hash + Ord + Debug + Send + Sync {}
impl<T: Clone + Eq + Hash + Ord + Debug + Send + Sync> Mono for T {}

/// Finitely supported map from monomials to nonzero coefficients.
#[derive(Clone, Debug)]
pub struct Lin<C, M: Eq + Hash> {
    terms: FxHashMap<M, C>,
}

impl<C: Coeff, M: Mono> Default for Lin<C, M> {
    fn default() -> Self {
        Lin { terms: FxHashMap::default() }
    }
}

impl<C: Coeff, M: Mono> PartialEq for Lin<C, M> {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(m, c)| other.terms.get(m) == Some(c))
    }
}

impl<C: Coeff, M: Mono> Lin<C, M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(m: M, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn add_term(&mut self, m: M, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, m: &M) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&M, &C)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &M> {
        self.terms.keys()
    }

    /// Terms in ascending monomial order.
    pub fn sorted(&self) -> Vec<(&M, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in other.iter() {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &C) {
        for (m, c) in other.iter() {
            self.add_term(m.clone(), c.mul(s));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Lin { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    /// Relabel monomials, merging terms that collide.
    pub fn map_monos<M2: Mono>(&self, mut f: impl FnMut(&M) -> M2) -> Lin<C, M2> {
        let mut out = Lin::zero();
        for (m, c) in self.iter() {
            out.add_term(f(m), c.clone());
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&M) -> bool) -> Self {
        Lin {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Smallest monomial of the support.
    pub fn first(&self) -> Option<(&M, &C)> {
        self.terms.iter().min_by(|a, b| a.0.cmp(b.0))
    }
}

impl<C: Coeff, M: Mono> FromIterator<(M, C)> for Lin<C, M> {
    fn from_iter<I: IntoIterator<Item = (M, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }
}

/// An associative unital algebra with a distinguished monomial basis.
pub trait Algebra: Send + Sync {
    type C: Coeff;
    type M: Mono;

    fn one_coeff(&self) -> Self::C;
    fn unit_mono(&self) -> Self::M;
    /// Feed every term of `a * b` to `f`.
    fn mul_mono_with(&self, a: &Self::M, b: &Self::M, f: &mut dyn FnMut(Self::M, &Self::C));

    fn one(&self) -> Lin<Self::C, Self::M> {
        Lin::term(self.unit_mono(), self.one_coeff())
    }

    fn zero_coeff(&self) -> Self::C {
        let one = self.one_coeff();
        let mut z = one.neg();
        z.add_assign(&one);
        z
    }

    fn scalar(&self, c: Self::C) -> Lin<Self::C, Self::M> {
        Lin::term(self.unit_mono(), c)
    }

    fn mul(&self, x: &Lin<Self::C, Self::M>, y: &Lin<Self::C, Self::M>) -> Lin<Self::C, Self::M> {
        let mut out = Lin::zero();
        for (ma, ca) in x.iter() {
            for (mb, cb) in y.iter() {
                let c = ca.mul(cb);
                self.mul_mono_with(ma, mb, &mut |m, k| out.add_term(m, c.mul(k)));
            }
        }
        out
    }

    fn mul_all<'a>(&self, factors: impl IntoIterator<Item = &'a Lin<Self::C, Self::M>>) -> Lin<Self::C, Self::M>
    where
        Self::C: 'a,
        Self::M: 'a,
    {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    fn pow(&self, x: &Lin<Self::C, Self::M>, n: u32) -> Lin<Self::C, Self::M> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    fn commutator(&self, x: &Lin<Self::C, Self::M>, y: &Lin<Self::C, Self::M>) -> Lin<Self::C, Self::M> {
        self.mul(x, y).sub(&self.mul(y, x))
    }
}

/// A base algebra whose monomial products are memoized.
pub trait Enveloping: Algebra {
    fn product(&self, a: &Self::M, b: &Self::M) -> Arc<Lin<Self::C, Self::M>>;
}

/// Generator structure of an enveloping algebra: every basis monomial is an
/// ordered word in generators.
pub trait Generated: Enveloping {
    type Gen: Copy + Eq + Hash + Ord + Debug + Send + Sync;

    fn gen_mono(&self, g: Self::Gen) -> Self::M;
    /// The generators of `m` left to right, with multiplicity.
    fn word(&self, m: &Self::M) -> Vec<Self::Gen>;

    fn gen(&self, g: Self::Gen) -> Lin<Self::C, Self::M> {
        Lin::term(self.gen_mono(g), self.one_coeff())
    }
}

/// Rank-`R` tensor power of a base algebra, multiplied componentwise.
pub struct Tensor<A, const R: usize> {
    pub base: Arc<A>,
}

impl<A, const R: usize> Clone for Tensor<A, R> {
    fn clone(&self) -> Self {
        Tensor { base: self.base.clone() }
    }
}

impl<A: Enveloping, const R: usize> Tensor<A, R> {
    pub fn new(base: Arc<A>) -> Self {
        Tensor { base }
    }
}

impl<A: Enveloping, const R: usize> Algebra for Tensor<A, R> {
    type C = A::C;
    type M = [A::M; R];

    fn one_coeff(&self) -> A::C {
        self.base.one_coeff()
    }

    fn unit_mono(&self) -> [A::M; R] {
        std::array::from_fn(|_| self.base.unit_mono())
    }

    fn mul_mono_with(&self, a: &[A::M; R], b: &[A::M; R], f: &mut dyn FnMut([A::M; R], &A::C)) {
        let parts: [Arc<Lin<A::C, A::M>>; R] = std::array::from_fn(|j| self.base.product(&a[j], &b[j]));
        if parts.iter().any(|p| p.is_zero()) {
            return;
        }
        let mut cur = a.clone();
        cartesian(&parts, 0, &mut cur, self.base.one_coeff(), f);
    }
}

fn cartesian<C: Coeff, M: Mono, const R: usize>(
    parts: &[Arc<Lin<C, M>>; R],
    j: usize,
    cur: &mut [M; R],
    c: C,
    f: &mut dyn FnMut([M; R], &C),
) {
    if j == R {
        f(cur.clone(), &c);
        return;
    }
    for (m, k) in parts[j].iter() {
        cur[j] = m.clone();
        cartesian(parts, j + 1, cur, c.mul(k), f);
    }
}

/// Polynomials in a central variable `t` over a base algebra, optionally
/// truncated above degree `trunc`.
#[derive(Clone)]
pub struct TPoly<B> {
    pub base: B,
    pub trunc: Option<u32>,
}

pub type Series<B> = Lin<<B as Algebra>::C, (u32, <B as Algebra>::M)>;

impl<B: Algebra> Algebra for TPoly<B> {
    type C = B::C;
    type M = (u32, B::M);

    fn one_coeff(&self) -> B::C {
        self.base.one_coeff()
    }

    fn unit_mono(&self) -> (u32, B::M) {
        (0, self.base.unit_mono())
    }

    fn mul_mono_with(&self, a: &(u32, B::M), b: &(u32, B::M), f: &mut dyn FnMut((u32, B::M), &B::C)) {
        let d = a.0 + b.0;
        if self.keeps(d) {
            self.base.mul_mono_with(&a.1, &b.1, &mut |m, c| f((d, m), c));
        }
    }
}

impl<B: Algebra> TPoly<B> {
    pub fn truncated(base: B, order: u32) -> Self {
        TPoly { base, trunc: Some(order) }
    }

    pub fn exact(base: B) -> Self {
        TPoly { base, trunc: None }
    }

    pub fn keeps(&self, degree: u32) -> bool {
        self.trunc.is_none_or(|n| degree <= n)
    }

    /// `x * t^d`, dropping what falls past the truncation order.
    pub fn monomial(&self, x: &Lin<B::C, B::M>, d: u32) -> Series<B> {
        if !self.keeps(d) {
            return Lin::zero();
        }
        x.map_monos(|m| (d, m.clone()))
    }

    pub fn lift(&self, x: &Lin<B::C, B::M>) -> Series<B> {
        self.monomial(x, 0)
    }

    pub fn t_power(&self, d: u32) -> Series<B> {
        self.monomial(&self.base.one(), d)
    }

    pub fn shift(&self, x: &Series<B>, d: u32) -> Series<B> {
        let mut out = Lin::zero();
        for ((e, m), c) in x.iter() {
            if self.keeps(e + d) {
                out.add_term((e + d, m.clone()), c.clone());
            }
        }
        out
    }

    pub fn truncate(&self, x: &Series<B>) -> Series<B> {
        x.filter(|(d, _)| self.keeps(*d))
    }

    pub fn slice(&self, x: &Series<B>, d: u32) -> Lin<B::C, B::M> {
        let mut out = Lin::zero();
        for ((e, m), c) in x.iter() {
            if *e == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn degree(&self, x: &Series<B>) -> Option<u32> {
        x.monomials().map(|(d, _)| *d).max()
    }

    /// Evaluate at `t = c`; the result sits in degree 0.
    pub fn specialize(&self, x: &Series<B>, c: &B::C) -> Series<B> {
        let mut out = Lin::zero();
        for ((d, m), k) in x.iter() {
            let mut w = k.clone();
            for _ in 0..*d {
                w = w.mul(c);
            }
            out.add_term((0, m.clone()), w);
        }
        out
    }

    /// Inverse of a series whose degree-0 part is the unit, via
    /// `g_0 = 1, g_n = -sum_{j=1}^n f_j g_{n-j}`. Only valid with truncation.
    pub fn invert(&self, f: &Series<B>) -> Result<Series<B>, crate::Error> {
        let order = self.trunc.ok_or(crate::Error::NotTruncated)?;
        if self.slice(f, 0) != self.base.one() {
            return Err(crate::Error::NonUnitLeading);
        }
        let slices: Vec<_> = (0..=order).map(|d| self.slice(f, d)).collect();
        let mut g: Vec<Lin<B::C, B::M>> = vec![self.base.one()];
        for n in 1..=order as usize {
            let mut acc = Lin::zero();
            for j in 1..=n {
                if slices[j].is_zero() {
                    continue;
                }
                acc.add_assign(&self.base.mul(&slices[j], &g[n - j]));
            }
            g.push(acc.neg());
        }
        let mut out = Lin::zero();
        for (d, s) in g.iter().enumerate() {
            out.add_assign(&self.monomial(s, d as u32));
        }
        Ok(out)
    }
}

impl<A: Enveloping> TPoly<Tensor<A, 2>> {
    /// `a ⊗ b` for two t-polynomials over the base.
    pub fn outer(&self, a: &Series<A>, b: &Series<A>) -> Series<Tensor<A, 2>> {
        let mut out = Lin::zero();
        for ((da, ma), ca) in a.iter() {
            for ((db, mb), cb) in b.iter() {
                if self.keeps(da + db) {
                    out.add_term((da + db, [ma.clone(), mb.clone()]), ca.mul(cb));
                }
            }
        }
        out
    }

    pub fn flip(&self, x: &Series<Tensor<A, 2>>) -> Series<Tensor<A, 2>> {
        x.map_monos(|(d, [a, b])| (*d, [b.clone(), a.clone()]))
    }
}

impl<A: Algebra> Algebra for Arc<A> {
    type C = A::C;
    type M = A::M;

    fn one_coeff(&self) -> A::C {
        (**self).one_coeff()
    }

    fn unit_mono(&self) -> A::M {
        (**self).unit_mono()
    }

    fn mul_mono_with(&self, a: &A::M, b: &A::M, f: &mut dyn FnMut(A::M, &A::C)) {
        (**self).mul_mono_with(a, b, f)
    }
}
