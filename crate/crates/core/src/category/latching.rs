use super::{compose_unchecked, Category, Morphism, Object};

/// An arrow `τ: σ → σ'` of a latching category, with `τ ∘ σ = σ'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatchingArrow {
    pub source: usize,
    pub target: usize,
    pub morphism: Morphism,
}

/// The latching category `∂(a ↓ A-)`: the non-identity arrows of `A-` out of
/// `a`, with the arrows of `A-` between their codomains that make the
/// triangle commute. Identity arrows are left implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatchingCategory {
    pub root: Object,
    pub objects: Vec<Morphism>,
    pub arrows: Vec<LatchingArrow>,
}

impl LatchingCategory {
    pub(crate) fn new(category: &Category, a: &Object) -> Self {
        let objects: Vec<Morphism> =
            category.minus_from(a).iter().filter(|s| !s.is_identity()).cloned().collect();
        let mut arrows = Vec::new();
        for (i, sigma) in objects.iter().enumerate() {
            let b = sigma.codomain();
            for (j, target) in objects.iter().enumerate() {
                if i == j {
                    continue;
                }
                let c = target.codomain();
                if c.degree() >= b.degree() {
                    continue;
                }
                for tau in category.hom(&b, &c).iter().filter(|t| t.is_minus()) {
                    if compose_unchecked(tau, sigma) == *target {
                        arrows.push(LatchingArrow { source: i, target: j, morphism: tau.clone() });
                    }
                }
            }
        }
        Self { root: a.clone(), objects, arrows }
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
}
