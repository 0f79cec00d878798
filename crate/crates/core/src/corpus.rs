//! Built-in example complexes and seeded random generators for sweeps.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipresheaf::{external_product, external_product_map, BiComplex, BiComplexMap};
use crate::category::{CategoryInstance, Object};
use crate::diagonal::categorical_product;
use crate::error::Result;
use crate::homotopy::collapse;
use crate::presheaf::{boundary, coproduct, pushout, representable, CellComplex, ComplexMap, Element, Representable};

pub type Named<T> = (String, T);

fn rep(instance: &CategoryInstance, a: &Object) -> Result<Arc<CellComplex>> {
    Ok(Arc::new(representable(instance, a)?))
}

fn file_name(a: &Object) -> String {
    crate::text::format_object(a).replace(['(', ')'], "").replace(',', "-")
}

/// Representables, boundaries and the empty complex over one instance.
pub fn builtin(instance: &CategoryInstance) -> Result<Vec<Named<Arc<CellComplex>>>> {
    let mut out = vec![("empty".to_string(), Arc::new(CellComplex::empty(instance.clone())))];
    for a in instance.objects() {
        out.push((format!("rep-{}", file_name(&a)), rep(instance, &a)?));
        if a.degree() > 0 {
            out.push((format!("boundary-{}", file_name(&a)), Arc::new(boundary(instance, &a)?)));
        }
    }
    Ok(out)
}

/// The example set written by the command line tool: representables and
/// boundaries over the three base categories, the product of intervals in
/// each, and a product-category representable.
pub fn examples() -> Result<Vec<Named<Arc<CellComplex>>>> {
    let mut out = Vec::new();
    for (tag, instance, point) in [
        ("simplex", CategoryInstance::simplex(2), Object::Simplex(1)),
        ("box-min", CategoryInstance::box_minimal(2), Object::Cube(1)),
        ("box-conn", CategoryInstance::box_connections(2), Object::Cube(1)),
    ] {
        for (name, k) in builtin(&instance)? {
            out.push((format!("{tag}-{name}"), k));
        }
        let interval = rep(&instance, &point)?;
        out.push((format!("{tag}-square-product"), Arc::new(categorical_product(&interval, &interval)?)));
    }
    let d = CategoryInstance::simplex(1);
    let pair = CategoryInstance::product(&d, &d);
    let a = Object::pair(Object::Simplex(1), Object::Simplex(1));
    out.push(("simplex-pair-rep-1-1".into(), rep(&pair, &a)?));
    Ok(out)
}

/// Glue two cells of the same shape together: the pushout of
/// `⟦a⟧ ⊔ ⟦a⟧ → K` along the fold onto `⟦a⟧`.
pub fn glue(k: &Arc<CellComplex>, y: usize, z: usize) -> Result<Arc<CellComplex>> {
    let shape = k.cells()[y].shape.clone();
    let instance = k.instance();
    let cell = Representable::new(instance, &shape)?;
    let a = Arc::new(cell.complex);
    let sum = coproduct(instance, &[a.clone(), a.clone()])?;
    let legs = [k.yoneda(&Element::cell(y, &shape))?, k.yoneda(&Element::cell(z, &shape))?];
    let into_k = sum.copair(k.clone(), &legs)?;
    let id = ComplexMap::identity(a.clone());
    let fold = sum.copair(a, &[id.clone(), id])?;
    Ok(pushout(&into_k, &fold)?.complex)
}

/// Collapse a cell along a degeneracy `σ: a → b`: the pushout of `⟦a⟧ → K`
/// along `⟦a⟧ → ⟦b⟧`.
pub fn collapse_cell(k: &Arc<CellComplex>, y: usize, sigma_index: usize) -> Result<Arc<CellComplex>> {
    let shape = k.cells()[y].shape.clone();
    let instance = k.instance();
    let minus: Vec<_> = instance.category().minus_from(&shape).iter().filter(|s| !s.is_identity()).cloned().collect();
    let Some(sigma) = minus.get(sigma_index % minus.len().max(1)) else {
        return Ok(k.clone());
    };
    let target = Representable::new(instance, &sigma.codomain())?;
    let element = target.element_of(sigma);
    let target = Arc::new(target.complex);
    let squash = target.yoneda(&element)?;
    let cell = k.yoneda(&Element::cell(y, &shape))?;
    Ok(pushout(&cell, &squash)?.complex)
}

/// A deterministic source of random complexes.
pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn object(&mut self, instance: &CategoryInstance) -> Object {
        instance.objects().choose(&mut self.rng).expect("instances have objects").clone()
    }

    fn part(&mut self, instance: &CategoryInstance) -> Result<Arc<CellComplex>> {
        let a = self.object(instance);
        if a.degree() > 0 && self.rng.gen_bool(0.4) {
            Ok(Arc::new(boundary(instance, &a)?))
        } else {
            rep(instance, &a)
        }
    }

    /// A random gluing or collapse applied to `k`; `k` itself when no cell fits.
    pub fn perturb(&mut self, k: &Arc<CellComplex>) -> Result<Arc<CellComplex>> {
        if k.is_empty() {
            return Ok(k.clone());
        }
        let y = self.rng.gen_range(0..k.len());
        if self.rng.gen_bool(0.5) {
            let same = k.cells_of_shape(&k.cells()[y].shape);
            let z = *same.choose(&mut self.rng).expect("y has its own shape");
            glue(k, y, z)
        } else {
            let s = self.rng.gen_range(0..8);
            collapse_cell(k, y, s)
        }
    }

    /// A coproduct of one to three representables or boundaries with up to
    /// two gluings or collapses applied.
    pub fn complex(&mut self, instance: &CategoryInstance) -> Result<Arc<CellComplex>> {
        let parts = (0..self.rng.gen_range(1..=3)).map(|_| self.part(instance)).collect::<Result<Vec<_>>>()?;
        let mut k = coproduct(instance, &parts)?.complex;
        for _ in 0..self.rng.gen_range(0..=2) {
            k = self.perturb(&k)?;
        }
        Ok(k)
    }

    /// External products of random complexes, summed, with up to one move.
    pub fn bicomplex(&mut self, left: &CategoryInstance, right: &CategoryInstance) -> Result<Arc<BiComplex>> {
        let mut parts = Vec::new();
        for _ in 0..self.rng.gen_range(1..=2) {
            let k = self.part(left)?;
            let l = self.part(right)?;
            parts.push(Arc::new(external_product(&k, &l)?));
        }
        let instance = CategoryInstance::product(left, right);
        let mut x = coproduct(&instance, &parts)?.complex;
        if self.rng.gen_bool(0.5) {
            x = self.perturb(&x)?;
        }
        Ok(x)
    }

    /// Maps `g ⊠ id_L` with `g` a homology equivalence, so that every level
    /// `X(−, a) → Y(−, a)` is one as well.
    pub fn equivalence(&mut self, instance: &CategoryInstance) -> Result<Named<BiComplexMap>> {
        let (name, g) = self.equivalence_factor(instance)?;
        let l = self.part(&instance.with_bound(instance.bound().min(1)))?;
        let source = Arc::new(external_product(g.source(), &l)?);
        let target = Arc::new(external_product(g.target(), &l)?);
        let id = ComplexMap::identity(l);
        Ok((name, external_product_map(&g, &id, source, target)?))
    }

    fn equivalence_factor(&mut self, instance: &CategoryInstance) -> Result<Named<ComplexMap>> {
        let objects: Vec<Object> = instance.objects().into_iter().filter(|a| a.degree() >= 1).collect();
        let a = objects.choose(&mut self.rng).expect("bound at least one").clone();
        Ok(match self.rng.gen_range(0..4) {
            0 => (format!("collapse {a}"), collapse(&rep(instance, &a)?)?),
            1 => {
                // two cells joined at a vertex, collapsed
                let b = objects.choose(&mut self.rng).expect("nonempty").clone();
                let sum = coproduct(instance, &[rep(instance, &a)?, rep(instance, &b)?])?.complex;
                let vertices: Vec<usize> =
                    (0..sum.len()).filter(|&y| sum.cells()[y].shape.degree() == 0).collect();
                let v = vertices[..vertices.len() / 2].choose(&mut self.rng).copied().unwrap_or(0);
                let w = vertices[vertices.len() / 2..].choose(&mut self.rng).copied().unwrap_or(0);
                (format!("collapse {a} v {b}"), collapse(&glue(&sum, v, w)?)?)
            }
            2 => {
                // a face inclusion into a representable
                let k = rep(instance, &a)?;
                let faces = instance.category().face_generators(&a);
                let face = faces.choose(&mut self.rng).expect("positive degree has faces");
                let x = k.face(top_cell(&k), face);
                (format!("face of {a}"), k.yoneda(&x)?)
            }
            _ => {
                // a sphere with an interval attached at a vertex
                let sphere = Arc::new(boundary(instance, &a)?);
                let edge_shape = instance.objects().into_iter().find(|o| o.degree() == 1).expect("degree one object");
                let edge = rep(instance, &edge_shape)?;
                let p = pushout(&first_vertex(&sphere)?, &first_vertex(&edge)?)?;
                (format!("whisker on boundary {a}"), p.left)
            }
        })
    }
}

fn top_cell(k: &CellComplex) -> usize {
    (0..k.len()).max_by_key(|&y| k.cells()[y].shape.degree()).expect("nonempty")
}

fn first_vertex(k: &Arc<CellComplex>) -> Result<ComplexMap> {
    let v = (0..k.len()).find(|&y| k.cells()[y].shape.degree() == 0).expect("nonempty complexes have vertices");
    k.yoneda(&Element::cell(v, &k.cells()[v].shape))
}

#[cfg(test)]
mod tests;
