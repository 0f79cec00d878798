//! Finite presheaves stored by their non-degenerate cells.
//!
//! An element of a presheaf at `a` is a pair `(σ, y)` of a degeneracy
//! `σ: a → b` in `A-` and a cell `y` of shape `b`. The pair is the element's
//! Eilenberg-Zilber normal form, so equality of elements is equality of
//! pairs. A cell stores, for every non-identity `φ ∈ A+` into its shape, the
//! normal form of `y·φ`; every other action is derived by Reedy
//! factorization.

mod colimit;
mod iso;
pub(crate) mod levels;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use colimit::{coproduct, is_pushout, pushout, skeletal_square, Coproduct, Pushout, Side, Square};
pub use iso::{is_isomorphic, isomorphism};

use crate::category::{compose_unchecked, reedy_factorize, CategoryInstance, Morphism, Object};
use crate::error::{Error, Result};

pub type CellId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub shape: Object,
}

/// An element `y·σ` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub sigma: Morphism,
    pub cell: CellId,
}

impl Element {
    pub fn cell(cell: CellId, shape: &Object) -> Self {
        Element { sigma: Morphism::identity(shape), cell }
    }

    pub fn shape(&self) -> Object {
        self.sigma.domain()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.sigma.is_identity()
    }
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    instance: CategoryInstance,
    cells: Vec<Cell>,
    faces: Vec<HashMap<Morphism, Element>>,
    by_shape: HashMap<Object, Vec<CellId>>,
    by_name: HashMap<String, CellId>,
}

impl PartialEq for CellComplex {
    fn eq(&self, other: &Self) -> bool {
        self.instance == other.instance && self.cells == other.cells && self.faces == other.faces
    }
}

impl Eq for CellComplex {}

impl CellComplex {
    pub(crate) fn assemble(instance: CategoryInstance, cells: Vec<Cell>, faces: Vec<HashMap<Morphism, Element>>) -> Self {
        let mut by_shape: HashMap<Object, Vec<CellId>> = HashMap::new();
        let mut by_name = HashMap::new();
        for (y, cell) in cells.iter().enumerate() {
            by_shape.entry(cell.shape.clone()).or_default().push(y);
            by_name.insert(cell.name.clone(), y);
        }
        Self { instance, cells, faces, by_shape, by_name }
    }

    pub fn empty(instance: CategoryInstance) -> Self {
        Self::assemble(instance, Vec::new(), Vec::new())
    }

    /// Build from complete face tables and check every invariant.
    pub fn from_parts(
        instance: CategoryInstance,
        cells: Vec<Cell>,
        faces: Vec<HashMap<Morphism, Element>>,
    ) -> Result<Self> {
        if cells.len() != faces.len() {
            return Err(Error::InvalidComplex("one face table per cell is required".into()));
        }
        let complex = Self::assemble(instance, cells, faces);
        complex.validate()?;
        Ok(complex)
    }

    /// Build from the actions of the generating faces only. The remaining
    /// faces are derived through every factorization into generators, and
    /// the derivations must agree.
    pub fn from_generators(
        instance: CategoryInstance,
        names: Vec<String>,
        shapes: Vec<Object>,
        generator_faces: Vec<HashMap<Morphism, Element>>,
    ) -> Result<Self> {
        let category = instance.category().clone();
        let cells: Vec<Cell> =
            names.into_iter().zip(shapes).map(|(name, shape)| Cell { name, shape }).collect();
        let mut order: Vec<CellId> = (0..cells.len()).collect();
        order.sort_by_key(|&y| cells[y].shape.degree());

        let mut partial = Self::assemble(instance, cells, vec![HashMap::new(); generator_faces.len()]);
        for y in order {
            let shape = partial.cells[y].shape.clone();
            let generators = category.face_generators(&shape);
            for g in &generators {
                if !generator_faces[y].contains_key(g) {
                    return Err(Error::InvalidComplex(format!(
                        "cell `{}` is missing the face {}",
                        partial.cells[y].name,
                        crate::text::format_face(g).unwrap_or_else(|| g.to_string())
                    )));
                }
            }
            for (g, e) in &generator_faces[y] {
                let ok = e.cell < partial.cells.len()
                    && e.sigma.is_minus()
                    && e.sigma.domain() == g.domain()
                    && e.sigma.codomain() == partial.cells[e.cell].shape
                    && partial.cells[e.cell].shape.degree() < shape.degree();
                if !ok {
                    return Err(Error::InvalidComplex(format!(
                        "face {g} of `{}` is not a normal form",
                        partial.cells[y].name
                    )));
                }
            }
            let mut table: HashMap<Morphism, Element> = HashMap::new();
            for phi in category.plus_into(&shape).iter() {
                if phi.is_identity() {
                    continue;
                }
                let mut derived: Option<Element> = None;
                for g in &generators {
                    let via = if g == phi {
                        generator_faces[y][g].clone()
                    } else {
                        let Some(rest) = category
                            .plus_into(&g.domain())
                            .iter()
                            .find(|psi| psi.domain() == phi.domain() && compose_unchecked(g, psi) == *phi)
                            .cloned()
                        else {
                            continue;
                        };
                        partial.act_unchecked(&generator_faces[y][g], &rest)
                    };
                    match &derived {
                        None => derived = Some(via),
                        Some(prev) if *prev != via => {
                            return Err(Error::NotNatural(format!(
                                "face {phi} of cell `{}` is {} one way and {} another",
                                partial.cells[y].name,
                                partial.format_element(prev),
                                partial.format_element(&via)
                            )));
                        }
                        _ => {}
                    }
                }
                let derived = derived.ok_or_else(|| {
                    Error::InvalidComplex(format!("face {phi} does not factor through a generator"))
                })?;
                table.insert(phi.clone(), derived);
            }
            partial.faces[y] = table;
        }
        partial.validate()?;
        Ok(partial)
    }

    fn validate(&self) -> Result<()> {
        let category = self.instance.category();
        let mut seen = HashMap::new();
        for (y, cell) in self.cells.iter().enumerate() {
            if !category.contains_object(&cell.shape) {
                return Err(Error::ForeignObject(cell.shape.clone(), category.to_string()));
            }
            if cell.shape.degree() > self.instance.bound() {
                return Err(Error::BoundExceeded { degree: cell.shape.degree(), bound: self.instance.bound() });
            }
            if seen.insert(cell.name.clone(), y).is_some() {
                return Err(Error::InvalidComplex(format!("duplicate cell name `{}`", cell.name)));
            }
        }
        for (y, cell) in self.cells.iter().enumerate() {
            for phi in category.plus_into(&cell.shape).iter().filter(|p| !p.is_identity()) {
                let e = self.faces[y].get(phi).ok_or_else(|| {
                    Error::InvalidComplex(format!("cell `{}` has no face {phi}", cell.name))
                })?;
                if e.cell >= self.cells.len()
                    || !e.sigma.is_minus()
                    || e.sigma.domain() != phi.domain()
                    || e.sigma.codomain() != self.cells[e.cell].shape
                {
                    return Err(Error::InvalidComplex(format!(
                        "face {phi} of `{}` is not a normal form",
                        cell.name
                    )));
                }
            }
            if self.faces[y].len() + 1 != category.plus_into(&cell.shape).len() {
                return Err(Error::InvalidComplex(format!("cell `{}` has extra faces", cell.name)));
            }
        }
        self.check_functoriality()
    }

    /// `(y·φ)·ψ = y·(φψ)` for every cell and composable pair in `A+`.
    pub fn check_functoriality(&self) -> Result<()> {
        let category = self.instance.category();
        for (y, cell) in self.cells.iter().enumerate() {
            for phi in category.plus_into(&cell.shape).iter() {
                let first = self.face(y, phi);
                for psi in category.plus_into(&phi.domain()).iter() {
                    let lhs = self.act_unchecked(&first, psi);
                    let rhs = self.face(y, &compose_unchecked(phi, psi));
                    if lhs != rhs {
                        return Err(Error::NotNatural(format!(
                            "cell `{}`: acting by {phi} then {psi} differs from acting by the composite",
                            cell.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn instance(&self) -> &CategoryInstance {
        &self.instance
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_by_name(&self, name: &str) -> Option<CellId> {
        self.by_name.get(name).copied()
    }

    pub fn cells_of_shape(&self, shape: &Object) -> &[CellId] {
        self.by_shape.get(shape).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Number of cells in each degree `0..=max`.
    pub fn census(&self) -> Vec<usize> {
        let top = self.cells.iter().map(|c| c.shape.degree() as usize).max();
        let mut out = vec![0; top.map_or(0, |t| t + 1)];
        for c in &self.cells {
            out[c.shape.degree() as usize] += 1;
        }
        out
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.cells.iter().map(|c| c.shape.degree()).max()
    }

    /// The stored normal form of `y·φ` for `φ ∈ A+` into the shape of `y`.
    pub fn face(&self, y: CellId, phi: &Morphism) -> Element {
        if phi.is_identity() {
            return Element { sigma: phi.clone(), cell: y };
        }
        self.faces[y][phi].clone()
    }

    pub(crate) fn face_table(&self, y: CellId) -> &HashMap<Morphism, Element> {
        &self.faces[y]
    }

    pub fn contains_element(&self, x: &Element) -> bool {
        x.cell < self.cells.len()
            && x.sigma.is_minus()
            && self.instance.category().contains_morphism(&x.sigma)
            && x.sigma.codomain() == self.cells[x.cell].shape
    }

    pub(crate) fn act_unchecked(&self, x: &Element, phi: &Morphism) -> Element {
        let psi = compose_unchecked(&x.sigma, phi);
        let (minus, plus) = reedy_factorize(&psi);
        let top = self.face(x.cell, &plus);
        Element { sigma: compose_unchecked(&top.sigma, &minus), cell: top.cell }
    }

    /// The normal form of `x·φ`.
    pub fn act(&self, x: &Element, phi: &Morphism) -> Result<Element> {
        if !self.contains_element(x) {
            return Err(Error::NotAnElement(format!("{x:?}")));
        }
        if !self.instance.category().contains_morphism(phi) {
            return Err(Error::ForeignMorphism(phi.clone(), self.instance.category().to_string()));
        }
        if phi.codomain() != x.shape() {
            return Err(Error::DomainMismatch { codomain: phi.codomain(), domain: x.shape() });
        }
        Ok(self.act_unchecked(x, phi))
    }

    /// The unique `(σ, y)` with `y` non-degenerate and `x = y·σ`.
    pub fn ez_decompose(&self, x: &Element) -> Result<(Morphism, CellId)> {
        if !self.contains_element(x) {
            return Err(Error::NotAnElement(format!("{x:?}")));
        }
        Ok((x.sigma.clone(), x.cell))
    }

    /// All elements at `a`, ordered by degeneracy then cell.
    pub fn evaluate(&self, a: &Object) -> Vec<Element> {
        let mut out = Vec::new();
        for sigma in self.instance.category().minus_from(a).iter() {
            for &y in self.cells_of_shape(&sigma.codomain()) {
                out.push(Element { sigma: sigma.clone(), cell: y });
            }
        }
        out
    }

    pub fn format_element(&self, x: &Element) -> String {
        format!("{}·{}", self.cells[x.cell].name, crate::text::format_degeneracy(&x.sigma))
    }

    /// The same cells over the same category with a different degree bound.
    pub fn rebound(&self, bound: u32) -> Result<Self> {
        if let Some(d) = self.max_degree() {
            if d > bound {
                return Err(Error::BoundExceeded { degree: d, bound });
            }
        }
        Ok(Self::assemble(self.instance.with_bound(bound), self.cells.clone(), self.faces.clone()))
    }

    pub fn renamed(&self, rename: impl Fn(&str) -> String) -> Self {
        let cells = self.cells.iter().map(|c| Cell { name: rename(&c.name), shape: c.shape.clone() }).collect();
        Self::assemble(self.instance.clone(), cells, self.faces.clone())
    }

    /// The subcomplex on cells satisfying `keep`, which must be closed under faces.
    pub fn subcomplex(&self, keep: impl Fn(CellId, &Cell) -> bool) -> Result<(CellComplex, Vec<CellId>)> {
        let kept: Vec<CellId> = (0..self.cells.len()).filter(|&y| keep(y, &self.cells[y])).collect();
        let mut new_id = vec![usize::MAX; self.cells.len()];
        for (i, &y) in kept.iter().enumerate() {
            new_id[y] = i;
        }
        let mut cells = Vec::with_capacity(kept.len());
        let mut faces = Vec::with_capacity(kept.len());
        for &y in &kept {
            cells.push(self.cells[y].clone());
            let mut table = HashMap::new();
            for (phi, e) in &self.faces[y] {
                if new_id[e.cell] == usize::MAX {
                    return Err(Error::InvalidComplex(format!(
                        "subcomplex keeps `{}` but not its face `{}`",
                        self.cells[y].name, self.cells[e.cell].name
                    )));
                }
                table.insert(phi.clone(), Element { sigma: e.sigma.clone(), cell: new_id[e.cell] });
            }
            faces.push(table);
        }
        Ok((Self::assemble(self.instance.clone(), cells, faces), kept))
    }

    /// `Skⁿ K`: the cells of degree at most `n`, with its inclusion.
    pub fn skeleton(self: &Arc<Self>, n: i64) -> Result<(Arc<CellComplex>, ComplexMap)> {
        let (sub, kept) = self.subcomplex(|_, c| (c.shape.degree() as i64) <= n)?;
        let sub = Arc::new(sub);
        let images = kept.iter().map(|&y| Element::cell(y, &self.cells[y].shape)).collect();
        let inclusion = ComplexMap::new_unchecked(sub.clone(), self.clone(), images);
        Ok((sub, inclusion))
    }

    /// The Yoneda image of `x`: the map `⟦a⟧ → K` sending the identity to `x`.
    pub fn yoneda(self: &Arc<Self>, x: &Element) -> Result<ComplexMap> {
        if !self.contains_element(x) {
            return Err(Error::NotAnElement(format!("{x:?}")));
        }
        let rep = Representable::new(&self.instance, &x.shape())?;
        let images = rep.arrows.iter().map(|f| self.act_unchecked(x, f)).collect();
        Ok(ComplexMap::new_unchecked(Arc::new(rep.complex), self.clone(), images))
    }
}

impl fmt::Display for CellComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "complex over {} with census {:?}", self.instance, self.census())
    }
}

/// `⟦a⟧ = A(−, a)`: one cell per arrow of `A+` into `a`.
pub fn representable(instance: &CategoryInstance, a: &Object) -> Result<CellComplex> {
    Ok(Representable::new(instance, a)?.complex)
}

/// A representable together with the arrow each of its cells stands for.
#[derive(Clone, Debug)]
pub struct Representable {
    pub complex: CellComplex,
    pub arrows: Vec<Morphism>,
}

impl Representable {
    pub fn new(instance: &CategoryInstance, a: &Object) -> Result<Self> {
        let degree = instance.degree(a)?;
        if degree > instance.bound() {
            return Err(Error::BoundExceeded { degree, bound: instance.bound() });
        }
        let category = instance.category();
        let arrows: Vec<Morphism> = category.plus_into(a).to_vec();
        let index: HashMap<&Morphism, CellId> = arrows.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let cells = arrows.iter().map(|f| Cell { name: f.to_string(), shape: f.domain() }).collect();
        let faces = arrows
            .iter()
            .map(|f| {
                category
                    .plus_into(&f.domain())
                    .iter()
                    .filter(|g| !g.is_identity())
                    .map(|g| {
                        let composite = compose_unchecked(f, g);
                        (g.clone(), Element::cell(index[&composite], &g.domain()))
                    })
                    .collect()
            })
            .collect();
        Ok(Self { complex: CellComplex::assemble(instance.clone(), cells, faces), arrows })
    }

    /// The element standing for an arbitrary arrow `c → a`.
    pub fn element_of(&self, phi: &Morphism) -> Element {
        let (minus, plus) = reedy_factorize(phi);
        let cell = self.arrows.iter().position(|f| *f == plus).expect("plus part is a cell");
        Element { sigma: minus, cell }
    }

    /// The arrow `c → a` an element stands for.
    pub fn arrow_of(&self, x: &Element) -> Morphism {
        compose_unchecked(&self.arrows[x.cell], &x.sigma)
    }
}

/// `∂⟦a⟧ = Sk^{deg a − 1} ⟦a⟧`.
pub fn boundary(instance: &CategoryInstance, a: &Object) -> Result<CellComplex> {
    let rep = Arc::new(representable(instance, a)?);
    let (sk, _) = rep.skeleton(a.degree() as i64 - 1)?;
    Ok(Arc::try_unwrap(sk).unwrap_or_else(|arc| (*arc).clone()))
}

/// A natural map given on cells.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    source: Arc<CellComplex>,
    target: Arc<CellComplex>,
    images: Vec<Element>,
}

impl PartialEq for ComplexMap {
    fn eq(&self, other: &Self) -> bool {
        same_complex(&self.source, &other.source)
            && same_complex(&self.target, &other.target)
            && self.images == other.images
    }
}

pub(crate) fn same_complex(a: &Arc<CellComplex>, b: &Arc<CellComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ComplexMap {
    /// Check shapes and naturality `f(y·φ) = f(y)·φ` on every cell face.
    pub fn new(source: Arc<CellComplex>, target: Arc<CellComplex>, images: Vec<Element>) -> Result<Self> {
        if source.instance.category() != target.instance.category() {
            return Err(Error::InstanceMismatch(source.instance.to_string(), target.instance.to_string()));
        }
        if images.len() != source.len() {
            return Err(Error::NotNatural("one image per source cell is required".into()));
        }
        for (y, e) in images.iter().enumerate() {
            if !target.contains_element(e) || e.shape() != source.cells[y].shape {
                return Err(Error::NotNatural(format!(
                    "image of `{}` is not an element of matching shape",
                    source.cells[y].name
                )));
            }
        }
        let map = Self::new_unchecked(source, target, images);
        map.check_naturality()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Arc<CellComplex>, target: Arc<CellComplex>, images: Vec<Element>) -> Self {
        Self { source, target, images }
    }

    pub fn check_naturality(&self) -> Result<()> {
        for (y, table) in self.source.faces.iter().enumerate() {
            for (phi, face) in table {
                let lhs = self.apply_unchecked(face);
                let rhs = self.target.act_unchecked(&self.images[y], phi);
                if lhs != rhs {
                    return Err(Error::NotNatural(format!(
                        "f(y·φ) ≠ f(y)·φ for cell `{}` and φ = {phi}",
                        self.source.cells[y].name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(complex: Arc<CellComplex>) -> Self {
        let images = complex.cells.iter().enumerate().map(|(y, c)| Element::cell(y, &c.shape)).collect();
        Self::new_unchecked(complex.clone(), complex, images)
    }

    pub fn source(&self) -> &Arc<CellComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CellComplex> {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub(crate) fn apply_unchecked(&self, x: &Element) -> Element {
        self.target.act_unchecked(&self.images[x.cell], &x.sigma)
    }

    /// `f(y·σ) = f(y)·σ`.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !self.source.contains_element(x) {
            return Err(Error::NotAnElement(format!("{x:?}")));
        }
        Ok(self.apply_unchecked(x))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ComplexMap) -> Result<ComplexMap> {
        if !same_complex(&first.target, &self.source) {
            return Err(Error::NotNatural("maps do not compose: target and source differ".into()));
        }
        let images = first.images.iter().map(|e| self.apply_unchecked(e)).collect();
        Ok(Self::new_unchecked(first.source.clone(), self.target.clone(), images))
    }

    /// Same cell images, viewed between complexes equal to the given ones.
    pub(crate) fn retarget(&self, source: Arc<CellComplex>, target: Arc<CellComplex>) -> Self {
        Self::new_unchecked(source, target, self.images.clone())
    }

    pub fn is_identity(&self) -> bool {
        same_complex(&self.source, &self.target)
            && self.images.iter().enumerate().all(|(y, e)| e.cell == y && e.sigma.is_identity())
    }
}

/// Verdict of the skeletal filtration check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub holds: bool,
    /// First `n ≥ −1` with `Skⁿ K = K`.
    pub stabilizes_at: i64,
}

/// Check `Sk⁻¹ K ⊆ Sk⁰ K ⊆ …` is increasing, stabilizes, and exhausts `K`.
pub fn filtration_check(complex: &Arc<CellComplex>) -> Result<Filtration> {
    let top = complex.max_degree().map_or(-1, |d| d as i64);
    let mut previous: Vec<CellId> = Vec::new();
    let mut holds = true;
    let mut stabilizes_at = None;
    for n in -1..=top + 1 {
        let (_, inclusion) = complex.skeleton(n)?;
        let current: Vec<CellId> = inclusion.images().iter().map(|e| e.cell).collect();
        holds &= previous.iter().all(|y| current.contains(y));
        if stabilizes_at.is_none() && current.len() == complex.len() {
            stabilizes_at = Some(n);
        }
        previous = current;
    }
    let mut union = previous;
    union.sort_unstable();
    holds &= union == (0..complex.len()).collect::<Vec<_>>();
    Ok(Filtration { holds, stabilizes_at: stabilizes_at.unwrap_or(top) })
}

#[cfg(test)]
mod tests;
