//! Plain-text rendering: monomials as `L_{-1}*L_2^3` or `D_0^2*D_3`,
//! elements as `+ c * mono` terms in ascending monomial order.

use crate::algebra::{Coeff, Lin, Mono};

pub trait RenderMono {
    fn render(&self) -> String;
}

impl RenderMono for crate::uwitt::PbwMonomial {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl<M: RenderMono, const R: usize> RenderMono for [M; R] {
    fn render(&self) -> String {
        self.iter().map(RenderMono::render).collect::<Vec<_>>().join(" ⊗ ")
    }
}

impl<M: RenderMono> RenderMono for (u32, M) {
    fn render(&self) -> String {
        match self.0 {
            0 => self.1.render(),
            1 => format!("t ({})", self.1.render()),
            d => format!("t^{d} ({})", self.1.render()),
        }
    }
}

pub fn render<C: Coeff, M: Mono + RenderMono>(x: &Lin<C, M>) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.sorted()
        .into_iter()
        .map(|(m, c)| format!("+ {c} * {}", m.render()))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One line per t-degree, `t^d: <terms>`.
pub fn render_series<C: Coeff, M: Mono + RenderMono>(x: &Lin<C, (u32, M)>) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut degrees: Vec<u32> = x.monomials().map(|(d, _)| *d).collect();
    degrees.sort_unstable();
    degrees.dedup();
    degrees
        .into_iter()
        .map(|d| {
            let slice: Lin<C, M> = x.iter().filter(|((e, _), _)| *e == d).map(|((_, m), c)| (m.clone(), c.clone())).collect();
            format!("t^{d}: {}", render(&slice))
        })
        .collect::<Vec<_>>()
        .join("\n")
}
