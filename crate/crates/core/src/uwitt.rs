//! The enveloping algebra U(W) of the Witt algebra over ℚ, with
//! `[L_r, L_s] = (s - r) L_{r+s}`.
//!
//! Basis: PBW monomials `L_{k_1}^{m_1} ... L_{k_n}^{m_n}` with
//! `k_1 < ... < k_n`. Products are straightened by moving the rightmost
//! out-of-order generator left, one commutation at a time, with results
//! memoized per `(monomial, generator)` pair.

use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::One;

use crate::algebra::{Algebra, Enveloping, Generated, Lin};
use crate::exactnum::{factorial, int_coeff, rat, Integer, Rational};

/// Ordered word of `(index, exponent)` pairs; the empty word is `1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct PbwMonomial(Vec<(i64, u32)>);

pub type Element = Lin<Rational, PbwMonomial>;

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial(Vec::new())
    }

    pub fn generator(k: i64) -> Self {
        PbwMonomial(vec![(k, 1)])
    }

    /// Build from pairs; `None` unless indices strictly ascend and exponents
    /// are positive.
    pub fn from_pairs(pairs: Vec<(i64, u32)>) -> Option<Self> {
        let ascending = pairs.windows(2).all(|w| w[0].0 < w[1].0);
        (ascending && pairs.iter().all(|&(_, m)| m > 0)).then_some(PbwMonomial(pairs))
    }

    pub fn pairs(&self) -> &[(i64, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> u32 {
        self.0.iter().map(|&(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(k, m)| k * i64::from(m)).sum()
    }

    fn last(&self) -> Option<i64> {
        self.0.last().map(|&(k, _)| k)
    }

    fn push(&self, g: i64) -> Self {
        let mut w = self.0.clone();
        match w.last_mut() {
            Some((k, m)) if *k == g => *m += 1,
            _ => w.push((g, 1)),
        }
        PbwMonomial(w)
    }

    fn pop(&self) -> (Self, i64) {
        let mut w = self.0.clone();
        let (k, m) = w.pop().expect("pop on the unit monomial");
        if m > 1 {
            w.push((k, m - 1));
        }
        (PbwMonomial(w), k)
    }
}

pub(crate) fn sub_index(k: i64) -> String {
    if (0..10).contains(&k) {
        format!("_{k}")
    } else {
        format!("_{{{k}}}")
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(k, m)| if m == 1 { format!("L{}", sub_index(k)) } else { format!("L{}^{m}", sub_index(k)) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Degree of an element in the grading `|L_k| = k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

pub fn degree(x: &Element) -> Grading {
    let mut degrees = x.monomials().map(PbwMonomial::degree);
    let Some(d) = degrees.next() else {
        return Grading::Zero;
    };
    if degrees.all(|e| e == d) {
        Grading::Homogeneous(d)
    } else {
        Grading::Inhomogeneous
    }
}

/// U(W) over ℚ with memoized straightening.
#[derive(Default)]
pub struct UWitt {
    by_gen: DashMap<(PbwMonomial, i64), Arc<Element>>,
    by_mono: DashMap<(PbwMonomial, PbwMonomial), Arc<Element>>,
}

impl UWitt {
    pub fn new() -> Arc<Self> {
        Arc::new(Self::default())
    }

    /// `u * L_g` in normal order.
    pub fn mul_gen(&self, u: &PbwMonomial, g: i64) -> Arc<Element> {
        let key = (u.clone(), g);
        if let Some(hit) = self.by_gen.get(&key) {
            return hit.clone();
        }
        let out = match u.last() {
            None => Lin::term(u.push(g), Rational::one()),
            Some(m) if m <= g => Lin::term(u.push(g), Rational::one()),
            Some(m) => {
                // u' L_m L_g = u' L_g L_m + (g - m) u' L_{m+g}
                let (prefix, _) = u.pop();
                let mut out = Element::zero();
                for (w, c) in self.mul_gen(&prefix, g).iter() {
                    out.add_scaled(&self.mul_gen(w, m), c);
                }
                out.add_scaled(&self.mul_gen(&prefix, m + g), &rat(g - m));
                out
            }
        };
        let out = Arc::new(out);
        self.by_gen.insert(key, out.clone());
        out
    }

    pub fn element(&self, k: i64) -> Element {
        self.gen(k)
    }
}

impl Algebra for UWitt {
    type C = Rational;
    type M = PbwMonomial;

    fn one_coeff(&self) -> Rational {
        Rational::one()
    }

    fn unit_mono(&self) -> PbwMonomial {
        PbwMonomial::one()
    }

    fn mul_mono_with(&self, a: &PbwMonomial, b: &PbwMonomial, f: &mut dyn FnMut(PbwMonomial, &Rational)) {
        for (m, c) in self.product(a, b).iter() {
            f(m.clone(), c);
        }
    }
}

impl Enveloping for UWitt {
    fn product(&self, a: &PbwMonomial, b: &PbwMonomial) -> Arc<Element> {
        if b.is_one() {
            return Arc::new(Lin::term(a.clone(), Rational::one()));
        }
        if a.is_one() {
            return Arc::new(Lin::term(b.clone(), Rational::one()));
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.by_mono.get(&key) {
            return hit.clone();
        }
        let mut acc = Lin::term(a.clone(), Rational::one());
        for g in self.word(b) {
            let mut next = Element::zero();
            for (w, c) in acc.iter() {
                next.add_scaled(&self.mul_gen(w, g), c);
            }
            acc = next;
        }
        let acc = Arc::new(acc);
        self.by_mono.insert(key, acc.clone());
        acc
    }
}

impl Generated for UWitt {
    type Gen = i64;

    fn gen_mono(&self, g: i64) -> PbwMonomial {
        PbwMonomial::generator(g)
    }

    fn word(&self, m: &PbwMonomial) -> Vec<i64> {
        m.0.iter().flat_map(|&(k, e)| std::iter::repeat_n(k, e as usize)).collect()
    }
}

/// `[L_r, L_s] = (s - r) L_{r+s}`.
pub fn bracket(r: i64, s: i64) -> Element {
    Lin::term(PbwMonomial::generator(r + s), rat(s - r))
}

/// The product `L_{k_1} ... L_{k_n}` in normal order.
pub fn normal_order(alg: &UWitt, word: &[i64]) -> Element {
    let mut acc = alg.one();
    for &g in word {
        let mut next = Element::zero();
        for (w, c) in acc.iter() {
            next.add_scaled(&alg.mul_gen(w, g), c);
        }
        acc = next;
    }
    acc
}

/// `h = L_0 / i`.
pub fn h_elem(i: i64) -> Element {
    Lin::term(PbwMonomial::generator(0), Rational::new(Integer::from(1), Integer::from(i)))
}

/// `e = i L_i`.
pub fn e_elem(i: i64) -> Element {
    Lin::term(PbwMonomial::generator(i), rat(i))
}

/// `(x + shift(0)) (x + shift(1)) ... (x + shift(n - 1))`.
pub fn rising<A: Algebra>(alg: &A, x: &Lin<A::C, A::M>, n: u32, shift: impl Fn(u32) -> A::C) -> Lin<A::C, A::M> {
    let mut acc = alg.one();
    for j in 0..n {
        acc = alg.mul(&acc, &x.add(&alg.scalar(shift(j))));
    }
    acc
}

/// `h^{(l)} = h (h + 1) ... (h + l - 1)`.
pub fn h_rising(alg: &UWitt, l: u32, i: i64) -> Element {
    rising(alg, &h_elem(i), l, |j| rat(i64::from(j)))
}

/// `(h + 1)^{(l)} = (h + 1) ... (h + l)`.
pub fn h_plus_one_rising(alg: &UWitt, l: u32, i: i64) -> Element {
    rising(alg, &h_elem(i), l, |j| rat(i64::from(j) + 1))
}

/// `d^{(l)}(x) = ad(e)^l (x) / l!` with `e = i L_i`.
pub fn d_power(alg: &UWitt, x: &Element, l: u32, i: i64) -> Element {
    let e = e_elem(i);
    let mut y = x.clone();
    for _ in 0..l {
        y = alg.commutator(&e, &y);
    }
    y.scale(&Rational::new(Integer::one(), factorial(l)))
}

/// `d^{(l)}(L_k) = C(i, k - i, l) L_{k + l i}`.
pub fn d_power_closed(k: i64, l: u32, i: i64) -> Element {
    let c = int_coeff(&Integer::from(i), &Integer::from(k - i), l).expect("integral coefficient");
    Lin::term(PbwMonomial::generator(k + i64::from(l) * i), Rational::from_integer(c))
}

/// `L_k (x^m) = m x^{m + k}` for `L_k = x^{k+1} d/dx`.
pub fn act_on_laurent(k: i64, m: i64) -> (i64, i64) {
    (m, m + k)
}
