use std::sync::Arc;

use crate::category::CategoryInstance;
use crate::error::{Error, Result};

use super::levels::{Evaluated, LevelTable};
use super::{same_complex, CellComplex, CellId, ComplexMap, Element, Representable};

fn check_category(a: &CellComplex, b: &CellComplex) -> Result<()> {
    if a.instance().category() != b.instance().category() {
        return Err(Error::InstanceMismatch(a.instance().to_string(), b.instance().to_string()));
    }
    Ok(())
}

/// Instance with the same category and the larger of the two bounds.
pub(crate) fn common_instance(a: &CellComplex, b: &CellComplex) -> Result<CategoryInstance> {
    check_category(a, b)?;
    Ok(a.instance().with_bound(a.instance().bound().max(b.instance().bound())))
}

pub struct Coproduct {
    pub complex: Arc<CellComplex>,
    pub injections: Vec<ComplexMap>,
    offsets: Vec<usize>,
}

/// Disjoint union; cell `y` of part `i` is renamed `i.y`.
pub fn coproduct(instance: &CategoryInstance, parts: &[Arc<CellComplex>]) -> Result<Coproduct> {
    let mut cells = Vec::new();
    let mut faces = Vec::new();
    let mut offsets = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        if part.instance().category() != instance.category() {
            return Err(Error::InstanceMismatch(part.instance().to_string(), instance.to_string()));
        }
        if let Some(d) = part.max_degree() {
            if d > instance.bound() {
                return Err(Error::BoundExceeded { degree: d, bound: instance.bound() });
            }
        }
        let offset = cells.len();
        offsets.push(offset);
        for (y, cell) in part.cells().iter().enumerate() {
            cells.push(super::Cell { name: format!("{i}.{}", cell.name), shape: cell.shape.clone() });
            faces.push(
                part.face_table(y)
                    .iter()
                    .map(|(phi, e)| (phi.clone(), Element { sigma: e.sigma.clone(), cell: e.cell + offset }))
                    .collect(),
            );
        }
    }
    let complex = Arc::new(CellComplex::assemble(instance.clone(), cells, faces));
    let injections = parts
        .iter()
        .zip(&offsets)
        .map(|(part, &offset)| {
            let images = part
                .cells()
                .iter()
                .enumerate()
                .map(|(y, c)| Element::cell(y + offset, &c.shape))
                .collect();
            ComplexMap::new_unchecked(part.clone(), complex.clone(), images)
        })
        .collect();
    Ok(Coproduct { complex, injections, offsets })
}

impl Coproduct {
    /// The map out of the coproduct restricting to `maps[i]` on part `i`.
    pub fn copair(&self, target: Arc<CellComplex>, maps: &[ComplexMap]) -> Result<ComplexMap> {
        if maps.len() != self.injections.len() {
            return Err(Error::NotNatural("copairing needs one map per summand".into()));
        }
        let mut images = Vec::with_capacity(self.complex.len());
        for (inj, map) in self.injections.iter().zip(maps) {
            if !same_complex(inj.source(), map.source()) || !same_complex(map.target(), &target) {
                return Err(Error::NotNatural("copairing: summand or target mismatch".into()));
            }
            images.extend(map.images().iter().cloned());
        }
        Ok(ComplexMap::new_unchecked(self.complex.clone(), target, images))
    }

    /// `∐ fᵢ` into another coproduct.
    pub fn sum_map(&self, other: &Coproduct, maps: &[ComplexMap]) -> Result<ComplexMap> {
        let composed = maps
            .iter()
            .zip(&other.injections)
            .map(|(f, inj)| inj.after(&f.retarget(f.source().clone(), inj.source().clone())))
            .collect::<Result<Vec<_>>>()?;
        self.copair(other.complex.clone(), &composed)
    }

    pub fn offset(&self, part: usize) -> usize {
        self.offsets[part]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left(CellId),
    Right(CellId),
}

/// A computed pushout `B ∪_S C` with its cocone.
pub struct Pushout {
    pub complex: Arc<CellComplex>,
    pub left: ComplexMap,
    pub right: ComplexMap,
    /// Which cell of `B` or `C` each pushout cell comes from.
    pub origin: Vec<Side>,
    span: (ComplexMap, ComplexMap),
}

/// Levelwise pushout of `B ← S → C`: union-find on `B_a ⊔ C_a` modulo
/// `f(s) ~ g(s)`, followed by normal-form extraction.
pub fn pushout(f: &ComplexMap, g: &ComplexMap) -> Result<Pushout> {
    if !same_complex(f.source(), g.source()) {
        return Err(Error::NotCommuting("pushout legs have different sources".into()));
    }
    let (b, c, s) = (f.target(), g.target(), f.source());
    let instance = common_instance(b, c)?;
    check_category(s, b)?;
    let eb = Evaluated::with_instance(b, &instance);
    let ec = Evaluated::with_instance(c, &instance);

    let joined = LevelTable::build(
        &instance,
        |i, _| eb.table.sizes[i] + ec.table.sizes[i],
        |phi, x| {
            let level = eb.table.level(&phi.codomain());
            let nb = eb.table.sizes[level];
            if x < nb {
                eb.table.apply(phi, x)
            } else {
                eb.table.sizes[eb.table.level(&phi.domain())] + ec.table.apply(phi, x - nb)
            }
        },
    );
    let objects = joined.objects.clone();
    let (quotient, class_of, reps) = joined.quotient(|level, uf| {
        let nb = eb.table.sizes[level];
        for x in s.evaluate(&objects[level]) {
            let (_, i) = eb.position(&f.apply_unchecked(&x));
            let (_, j) = ec.position(&g.apply_unchecked(&x));
            uf.union(i, nb + j);
        }
    });

    let extraction = quotient.extract(|level, class| {
        let r = reps[level][class];
        let nb = eb.table.sizes[level];
        if r < nb {
            b.cells()[eb.elements[level][r].cell].name.clone()
        } else {
            c.cells()[ec.elements[level][r - nb].cell].name.clone()
        }
    })?;
    let origin = extraction
        .origin
        .iter()
        .map(|&(level, class)| {
            let r = reps[level][class];
            let nb = eb.table.sizes[level];
            if r < nb {
                Side::Left(eb.elements[level][r].cell)
            } else {
                Side::Right(ec.elements[level][r - nb].cell)
            }
        })
        .collect();
    let complex = Arc::new(extraction.complex);
    let cocone = |e: &Evaluated, side: &Arc<CellComplex>, shift: bool| {
        let images = side
            .cells()
            .iter()
            .enumerate()
            .map(|(y, cell)| {
                let (level, i) = e.position(&Element::cell(y, &cell.shape));
                let i = if shift { i + eb.table.sizes[level] } else { i };
                extraction.normal[level][class_of[level][i]].clone()
            })
            .collect();
        ComplexMap::new_unchecked(side.clone(), complex.clone(), images)
    };
    let left = cocone(&eb, b, false);
    let right = cocone(&ec, c, true);
    Ok(Pushout { complex, left, right, origin, span: (f.clone(), g.clone()) })
}

impl Pushout {
    /// The unique map `P → D` restricting to `h` on `B` and `k` on `C`.
    pub fn mediate(&self, h: &ComplexMap, k: &ComplexMap) -> Result<ComplexMap> {
        let (f, g) = &self.span;
        if !same_complex(h.source(), f.target()) || !same_complex(k.source(), g.target()) {
            return Err(Error::NotCommuting("cocone legs do not start at the span's feet".into()));
        }
        if !same_complex(h.target(), k.target()) {
            return Err(Error::NotCommuting("cocone legs end in different complexes".into()));
        }
        if h.after(f)?.images() != k.after(g)?.images() {
            return Err(Error::NotCommuting("h ∘ f ≠ k ∘ g".into()));
        }
        let images = self
            .origin
            .iter()
            .map(|side| match *side {
                Side::Left(y) => h.images()[y].clone(),
                Side::Right(y) => k.images()[y].clone(),
            })
            .collect();
        ComplexMap::new(self.complex.clone(), h.target().clone(), images)
    }
}

/// A commuting square
///
/// ```text
///   S --top--> B
///   |          |
///  left      right
///   v          v
///   C --bot--> D
/// ```
#[derive(Clone, Debug)]
pub struct Square {
    pub top: ComplexMap,
    pub left: ComplexMap,
    pub right: ComplexMap,
    pub bottom: ComplexMap,
}

impl Square {
    pub fn commutes(&self) -> Result<bool> {
        Ok(self.right.after(&self.top)?.images() == self.bottom.after(&self.left)?.images())
    }
}

/// Whether the comparison map from the computed pushout to the corner of
/// the square is bijective at every level up to the degree bound.
pub fn is_pushout(square: &Square) -> Result<bool> {
    if !square.commutes()? {
        return Err(Error::NotCommuting("right ∘ top ≠ bottom ∘ left".into()));
    }
    let p = pushout(&square.top, &square.left)?;
    let comparison = p.mediate(&square.right, &square.bottom)?;
    levelwise_bijective(&comparison)
}

pub(crate) fn levelwise_bijective(map: &ComplexMap) -> Result<bool> {
    let instance = common_instance(map.source(), map.target())?;
    for a in instance.objects() {
        let source = map.source().evaluate(&a);
        let target_size = map.target().evaluate(&a).len();
        if source.len() != target_size {
            return Ok(false);
        }
        let mut image: Vec<Element> = source.iter().map(|x| map.apply_unchecked(x)).collect();
        image.sort();
        image.dedup();
        if image.len() != target_size {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Translate a cell of `K` into the matching cell of a subcomplex.
fn restrict_images(inclusion: &ComplexMap, elements: Vec<Element>) -> Result<Vec<Element>> {
    let mut back = vec![usize::MAX; inclusion.target().len()];
    for (i, e) in inclusion.images().iter().enumerate() {
        back[e.cell] = i;
    }
    elements
        .into_iter()
        .map(|e| {
            let cell = back[e.cell];
            if cell == usize::MAX {
                Err(Error::NotAnElement(format!("cell {} is outside the subcomplex", e.cell)))
            } else {
                Ok(Element { sigma: e.sigma, cell })
            }
        })
        .collect()
}

/// The attaching square of the `n`-cells of `K`:
///
/// ```text
///   ∐ ∂⟦a⟧ ---> Sk^{n-1} K
///     |             |
///   ∐ ⟦a⟧  --->  Skⁿ K
/// ```
///
/// indexed by the non-degenerate cells of degree `n`.
pub fn skeletal_square(complex: &Arc<CellComplex>, n: i64) -> Result<Square> {
    let instance = complex.instance().clone();
    let (lower, lower_incl) = complex.skeleton(n - 1)?;
    let (upper, upper_incl) = complex.skeleton(n)?;
    let top_cells: Vec<CellId> =
        (0..complex.len()).filter(|&y| complex.cells()[y].shape.degree() as i64 == n).collect();

    let mut boundaries = Vec::new();
    let mut representables = Vec::new();
    let mut inclusions = Vec::new();
    let mut attaching = Vec::new();
    let mut characteristic = Vec::new();
    for &y in &top_cells {
        let shape = complex.cells()[y].shape.clone();
        let rep = Representable::new(&instance, &shape)?;
        let rep_complex = Arc::new(rep.complex.clone());
        let (bdry, bdry_incl) = rep_complex.skeleton(n - 1)?;
        let x = Element::cell(y, &shape);

        let onto_k: Vec<Element> = rep.arrows.iter().map(|f| complex.act_unchecked(&x, f)).collect();
        let in_upper = restrict_images(&upper_incl, onto_k.clone())?;
        characteristic.push(ComplexMap::new_unchecked(rep_complex.clone(), upper.clone(), in_upper));

        let on_boundary: Vec<Element> =
            bdry_incl.images().iter().map(|e| onto_k[e.cell].clone()).collect();
        let in_lower = restrict_images(&lower_incl, on_boundary)?;
        attaching.push(ComplexMap::new_unchecked(bdry.clone(), lower.clone(), in_lower));

        boundaries.push(bdry);
        representables.push(rep_complex);
        inclusions.push(bdry_incl);
    }
    let tl = coproduct(&instance, &boundaries)?;
    let bl = coproduct(&instance, &representables)?;
    let left = tl.sum_map(&bl, &inclusions)?;
    let top = tl.copair(lower.clone(), &attaching)?;
    let bottom = bl.copair(upper.clone(), &characteristic)?;
    let right_images = restrict_images(
        &upper_incl,
        lower_incl.images().to_vec(),
    )?;
    let right = ComplexMap::new_unchecked(lower, upper, right_images);
    Ok(Square { top, left, right, bottom })
}
