//! Deformed Hopf structures on `A[t]` (or `A[[t]]` truncated) given by the
//! images of generators, extended multiplicatively (coproduct) and
//! antimultiplicatively (antipode) along PBW words, together with the
//! generic axiom checks shared by both characteristics.

use std::sync::Arc;

use dashmap::DashMap;

use crate::algebra::{Algebra, Coeff, Generated, Lin, Series, TPoly, Tensor};
use crate::report::{Point, VerificationReport};
use crate::text::RenderMono;

pub type S1<A> = Series<Arc<A>>;
pub type S2<A> = Series<Tensor<A, 2>>;
pub type S3<A> = Series<Tensor<A, 3>>;

type GenMap<A, T> = Box<dyn Fn(<A as Generated>::Gen) -> T + Send + Sync>;

pub struct Deformed<A: Generated> {
    pub base: Arc<A>,
    pub s1: TPoly<Arc<A>>,
    pub s2: TPoly<Tensor<A, 2>>,
    pub s3: TPoly<Tensor<A, 3>>,
    delta_gen: GenMap<A, S2<A>>,
    antipode_gen: GenMap<A, S1<A>>,
    delta_memo: DashMap<A::M, Arc<S2<A>>>,
    antipode_memo: DashMap<A::M, Arc<S1<A>>>,
}

impl<A: Generated> Deformed<A>
where
    A::M: RenderMono,
{
    pub fn new(
        base: Arc<A>,
        trunc: Option<u32>,
        delta_gen: impl Fn(A::Gen) -> S2<A> + Send + Sync + 'static,
        antipode_gen: impl Fn(A::Gen) -> S1<A> + Send + Sync + 'static,
    ) -> Self {
        Deformed {
            s1: TPoly { base: base.clone(), trunc },
            s2: TPoly { base: Tensor::new(base.clone()), trunc },
            s3: TPoly { base: Tensor::new(base.clone()), trunc },
            base,
            delta_gen: Box::new(delta_gen),
            antipode_gen: Box::new(antipode_gen),
            delta_memo: DashMap::new(),
            antipode_memo: DashMap::new(),
        }
    }

    pub fn gen(&self, g: A::Gen) -> S1<A> {
        self.s1.lift(&self.base.gen(g))
    }

    pub fn delta_mono(&self, m: &A::M) -> Arc<S2<A>> {
        if let Some(hit) = self.delta_memo.get(m) {
            return hit.clone();
        }
        let word = self.base.word(m);
        let out = match word.as_slice() {
            [] => self.s2.one(),
            [g] => self.s2.truncate(&(self.delta_gen)(*g)),
            _ => {
                let mut acc = self.s2.one();
                for g in word {
                    acc = self.s2.mul(&acc, &self.delta_mono(&self.base.gen_mono(g)));
                }
                acc
            }
        };
        let out = Arc::new(out);
        self.delta_memo.insert(m.clone(), out.clone());
        out
    }

    pub fn antipode_mono(&self, m: &A::M) -> Arc<S1<A>> {
        if let Some(hit) = self.antipode_memo.get(m) {
            return hit.clone();
        }
        let word = self.base.word(m);
        let out = match word.as_slice() {
            [] => self.s1.one(),
            [g] => self.s1.truncate(&(self.antipode_gen)(*g)),
            _ => {
                let mut acc = self.s1.one();
                for g in word.into_iter().rev() {
                    acc = self.s1.mul(&acc, &self.antipode_mono(&self.base.gen_mono(g)));
                }
                acc
            }
        };
        let out = Arc::new(out);
        self.antipode_memo.insert(m.clone(), out.clone());
        out
    }

    pub fn delta(&self, x: &S1<A>) -> S2<A> {
        let mut out = Lin::zero();
        for ((d, m), c) in x.iter() {
            out.add_scaled(&self.s2.shift(&self.delta_mono(m), *d), c);
        }
        out
    }

    pub fn antipode(&self, x: &S1<A>) -> S1<A> {
        let mut out = Lin::zero();
        for ((d, m), c) in x.iter() {
            out.add_scaled(&self.s1.shift(&self.antipode_mono(m), *d), c);
        }
        out
    }

    /// The counit as an algebra map; `t` passes through unchanged.
    pub fn counit(&self, x: &S1<A>) -> S1<A> {
        let unit = self.base.unit_mono();
        x.filter(|(_, m)| *m == unit)
    }

    /// `(Δ ⊗ id)(x)`.
    pub fn delta_left(&self, x: &S2<A>) -> S3<A> {
        let mut out = Lin::zero();
        for ((d, [a, b]), c) in x.iter() {
            for ((e, [u, v]), k) in self.delta_mono(a).iter() {
                if self.s3.keeps(d + e) {
                    out.add_term((d + e, [u.clone(), v.clone(), b.clone()]), c.mul(k));
                }
            }
        }
        out
    }

    /// `(id ⊗ Δ)(x)`.
    pub fn delta_right(&self, x: &S2<A>) -> S3<A> {
        let mut out = Lin::zero();
        for ((d, [a, b]), c) in x.iter() {
            for ((e, [u, v]), k) in self.delta_mono(b).iter() {
                if self.s3.keeps(d + e) {
                    out.add_term((d + e, [a.clone(), u.clone(), v.clone()]), c.mul(k));
                }
            }
        }
        out
    }

    /// `(ε ⊗ id)(x)`.
    pub fn counit_left(&self, x: &S2<A>) -> S1<A> {
        let unit = self.base.unit_mono();
        x.iter().filter(|((_, [a, _]), _)| *a == unit).map(|((d, [_, b]), c)| ((*d, b.clone()), c.clone())).collect()
    }

    /// `(id ⊗ ε)(x)`.
    pub fn counit_right(&self, x: &S2<A>) -> S1<A> {
        let unit = self.base.unit_mono();
        x.iter().filter(|((_, [_, b]), _)| *b == unit).map(|((d, [a, _]), c)| ((*d, a.clone()), c.clone())).collect()
    }

    /// `m ∘ (S ⊗ id)(x)`.
    pub fn convolve_left(&self, x: &S2<A>) -> S1<A> {
        let one = self.base.one_coeff();
        let mut out = Lin::zero();
        for ((d, [a, b]), c) in x.iter() {
            let right = Lin::term((*d, b.clone()), one.clone());
            out.add_scaled(&self.s1.mul(&self.antipode_mono(a), &right), c);
        }
        out
    }

    /// `m ∘ (id ⊗ S)(x)`.
    pub fn convolve_right(&self, x: &S2<A>) -> S1<A> {
        let one = self.base.one_coeff();
        let mut out = Lin::zero();
        for ((d, [a, b]), c) in x.iter() {
            let left = Lin::term((*d, a.clone()), one.clone());
            out.add_scaled(&self.s1.mul(&left, &self.antipode_mono(b)), c);
        }
        out
    }

    pub fn delta_op(&self, x: &S1<A>) -> S2<A> {
        self.s2.flip(&self.delta(x))
    }

    /// Coassociativity, both counit laws and both antipode laws on `x`.
    pub fn check_axioms(&self, x: &S1<A>, point: &Point, report: &mut VerificationReport) -> bool {
        let dx = self.delta(x);
        let mut ok = report.check_eq("coassociativity", point, &self.delta_left(&dx), &self.delta_right(&dx));
        ok &= report.check_eq("counit (ε⊗id)Δ = id", point, &self.counit_left(&dx), x);
        ok &= report.check_eq("counit (id⊗ε)Δ = id", point, &self.counit_right(&dx), x);
        let unit_counit = self.counit(x);
        ok &= report.check_eq("antipode m(S⊗id)Δ = ηε", point, &self.convolve_left(&dx), &unit_counit);
        ok &= report.check_eq("antipode m(id⊗S)Δ = ηε", point, &self.convolve_right(&dx), &unit_counit);
        ok
    }

    /// Δ and S respect the product `x y` after normal ordering.
    pub fn check_pair(&self, x: &S1<A>, y: &S1<A>, point: &Point, report: &mut VerificationReport) -> bool {
        let xy = self.s1.mul(x, y);
        let (dx, dy) = (self.delta(x), self.delta(y));
        let mut ok = report.check_eq("Δ multiplicative", point, &self.delta(&xy), &self.s2.mul(&dx, &dy));
        ok &= report.check_eq(
            "Δ bracket compatible",
            point,
            &self.delta(&self.s1.commutator(x, y)),
            &self.s2.commutator(&dx, &dy),
        );
        ok &= report.check_eq(
            "S antimultiplicative",
            point,
            &self.antipode(&xy),
            &self.s1.mul(&self.antipode(y), &self.antipode(x)),
        );
        ok
    }
}
