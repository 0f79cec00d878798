//! Diagonal functors from bipresheaves to presheaves.
//!
//! The categorical diagonal restricts along `a ↦ (a, a)`. The Day diagonals
//! are left Kan extensions of a promonoidal structure `⊗: A × A → aSet`,
//! computed as the coend `∫^{(a,a')} X(a,a') × (a ⊗ a')` level by level.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bipresheaf::{external_product, BiComplex, BiComplexMap};
use crate::category::{compose_unchecked, Category, CategoryInstance, CubeCoord, Morphism, Object};
use crate::error::{Error, Result};
use crate::presheaf::levels::LevelTable;
use crate::presheaf::{CellComplex, CellId, ComplexMap, Element};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PromonoidalStructure {
    /// `([m], [n]) ↦ Δ^{m+n+1}` on the simplex category.
    Join,
    /// `([1]^m, [1]^n) ↦ [1]^{m+n}` on the box categories.
    Geometric,
    /// `(a, a') ↦ ⟦a⟧ × ⟦a'⟧` on any base.
    CategoricalProduct,
}

impl PromonoidalStructure {
    fn check_base(self, base: &Category) -> Result<()> {
        let ok = match self {
            PromonoidalStructure::Join => *base == Category::Simplex,
            PromonoidalStructure::Geometric => base.is_cubical(),
            PromonoidalStructure::CategoricalProduct => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedBase(format!("{self:?} is not defined over {base}")))
        }
    }

    /// The representing object of `a ⊗ a'`, when it is representable.
    pub fn object(self, a: &Object, b: &Object) -> Option<Object> {
        match (self, a, b) {
            (PromonoidalStructure::Join, Object::Simplex(m), Object::Simplex(n)) => Some(Object::Simplex(m + n + 1)),
            (PromonoidalStructure::Geometric, Object::Cube(m), Object::Cube(n)) => Some(Object::Cube(m + n)),
            _ => None,
        }
    }

    /// Degree of the top cell of `a ⊗ a'`.
    pub fn degree(self, a: &Object, b: &Object) -> u32 {
        match self {
            PromonoidalStructure::Join => a.degree() + b.degree() + 1,
            _ => a.degree() + b.degree(),
        }
    }

    /// The elements of `(a ⊗ a')_c`: arrows `c → a ⊗ a'`, or arrow pairs
    /// `(c, c) → (a, a')` for the categorical product.
    pub fn elements(self, base: &Category, c: &Object, a: &Object, b: &Object) -> Vec<Morphism> {
        match self.object(a, b) {
            Some(target) => base.hom(c, &target).to_vec(),
            None => {
                let left = base.hom(c, a);
                let right = base.hom(c, b);
                left.iter()
                    .flat_map(|f| right.iter().map(move |g| Morphism::pair(f.clone(), g.clone())))
                    .collect()
            }
        }
    }

    /// `φ ⊗ ψ` as an arrow between representing objects.
    pub fn tensor_arrows(self, phi: &Morphism, psi: &Morphism) -> Option<Morphism> {
        match (self, phi, psi) {
            (PromonoidalStructure::Join, Morphism::Simplex { cod: m, values: f }, Morphism::Simplex { cod: n, values: g }) => {
                let values = f.iter().copied().chain(g.iter().map(|v| v + m + 1)).collect();
                Some(Morphism::Simplex { cod: m + n + 1, values })
            }
            (PromonoidalStructure::Geometric, Morphism::Cube { dom: m, coords: f }, Morphism::Cube { dom: n, coords: g }) => {
                let shift = |c: &CubeCoord| match c {
                    CubeCoord::Var(i) => CubeCoord::Var(i + m),
                    CubeCoord::Max(s) => CubeCoord::Max(s.iter().map(|i| i + m).collect()),
                    other => other.clone(),
                };
                let coords = f.iter().cloned().chain(g.iter().map(shift)).collect();
                Some(Morphism::Cube { dom: m + n, coords })
            }
            _ => None,
        }
    }

    /// `(φ, ψ)_* p`, covariant action on `a ⊗ a'`.
    fn push(self, w: &Morphism, p: &Morphism) -> Morphism {
        let (phi, psi) = (w.first().expect("pair"), w.second().expect("pair"));
        match self.tensor_arrows(phi, psi) {
            Some(t) => compose_unchecked(&t, p),
            None => Morphism::pair(
                compose_unchecked(phi, p.first().expect("pair")),
                compose_unchecked(psi, p.second().expect("pair")),
            ),
        }
    }

    /// `p·θ`, the presheaf action on `a ⊗ a'`.
    fn restrict(self, p: &Morphism, theta: &Morphism) -> Morphism {
        match p {
            Morphism::Pair(f, g) => Morphism::pair(compose_unchecked(f, theta), compose_unchecked(g, theta)),
            _ => compose_unchecked(p, theta),
        }
    }

    /// `a ⊗ a'` as a complex over the base.
    pub fn value(self, base: &CategoryInstance, a: &Object, b: &Object) -> Result<CellComplex> {
        self.check_base(base.category())?;
        match self.object(a, b) {
            Some(target) => {
                let bound = base.bound().max(target.degree());
                crate::presheaf::representable(&base.with_bound(bound), &target)
            }
            None => {
                let bound = base.bound().max(a.degree() + b.degree());
                let instance = base.with_bound(bound);
                let ka = crate::presheaf::representable(&instance, a)?;
                let kb = crate::presheaf::representable(&instance, b)?;
                categorical_product(&ka, &kb)
            }
        }
    }
}

impl std::fmt::Display for PromonoidalStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PromonoidalStructure::Join => "join",
            PromonoidalStructure::Geometric => "geometric",
            PromonoidalStructure::CategoricalProduct => "categorical-product",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagonalMode {
    /// Restriction along `a ↦ (a, a)`.
    Categorical,
    Day(PromonoidalStructure),
}

impl std::fmt::Display for DiagonalMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiagonalMode::Categorical => f.write_str("categorical"),
            DiagonalMode::Day(p) => write!(f, "day({p})"),
        }
    }
}

/// `diag X` with the bookkeeping needed for induced maps. Elements are
/// pairs `(cell of X, p)`.
#[derive(Clone, Debug)]
pub struct Diagonal {
    pub complex: Arc<CellComplex>,
    pub mode: DiagonalMode,
    source: Arc<BiComplex>,
    normal: HashMap<(CellId, Morphism), Element>,
    origin: Vec<(CellId, Morphism)>,
}

impl Diagonal {
    /// Normal form in `diag X` of the pair `(y, p)`.
    pub fn class_of(&self, y: CellId, p: &Morphism) -> Element {
        match self.mode {
            DiagonalMode::Categorical => {
                let e = self.source.act_unchecked(&Element::cell(y, &self.source.cells()[y].shape), p);
                self.normal[&(e.cell, e.sigma)].clone()
            }
            DiagonalMode::Day(_) => self.normal[&(y, p.clone())].clone(),
        }
    }

    pub fn origin(&self, cell: CellId) -> &(CellId, Morphism) {
        &self.origin[cell]
    }
}

fn base_of(x: &BiComplex) -> Result<Category> {
    match x.instance().category().factors() {
        Some((a, b)) if a == b => Ok(a.clone()),
        Some(_) => Err(Error::UnsupportedBase(format!("diagonal of {} needs equal factors", x.instance().category()))),
        None => Err(Error::UnsupportedBase(format!("{} is not a product category", x.instance().category()))),
    }
}

/// Levelwise construction shared by every diagonal: `elements(level, cell)`
/// lists the `p` paired with a cell, `act` restricts a pair along an arrow
/// of the base and `relate` reports generating identifications.
fn build(
    x: &Arc<BiComplex>,
    mode: DiagonalMode,
    instance: &CategoryInstance,
    elements: impl Fn(&Object, CellId) -> Vec<Morphism>,
    act: impl Fn(CellId, &Morphism, &Morphism) -> (CellId, Morphism),
    relations: impl Fn(&Object, &mut dyn FnMut((CellId, Morphism), (CellId, Morphism))),
) -> Result<Diagonal> {
    let objects = instance.objects();
    let mut pairs: Vec<Vec<(CellId, Morphism)>> = Vec::with_capacity(objects.len());
    for c in &objects {
        let mut v = Vec::new();
        for y in 0..x.len() {
            v.extend(elements(c, y).into_iter().map(|p| (y, p)));
        }
        pairs.push(v);
    }
    let lookup: Vec<HashMap<(CellId, Morphism), usize>> =
        pairs.iter().map(|v| v.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()).collect();
    let level_of: HashMap<Object, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();

    let table = LevelTable::build(
        instance,
        |level, _| pairs[level].len(),
        |theta, i| {
            let (y, p) = &pairs[level_of[&theta.codomain()]][i];
            lookup[level_of[&theta.domain()]][&act(*y, p, theta)]
        },
    );
    let (quotient, class_of, reps) = table.quotient(|level, uf| {
        relations(&objects[level], &mut |a, b| uf.union(lookup[level][&a], lookup[level][&b]));
    });
    let extraction = quotient.extract(|level, class| {
        let (y, p) = &pairs[level][reps[level][class]];
        let name = &x.cells()[*y].name;
        match mode {
            DiagonalMode::Categorical if p.is_identity() => name.clone(),
            DiagonalMode::Categorical => format!("{name}·{}", crate::text::format_degeneracy(p)),
            DiagonalMode::Day(_) => format!("{name}|{p}"),
        }
    })?;
    let mut normal = HashMap::new();
    for (level, v) in pairs.iter().enumerate() {
        for (i, key) in v.iter().enumerate() {
            normal.insert(key.clone(), extraction.normal[level][class_of[level][i]].clone());
        }
    }
    let origin = extraction.origin.iter().map(|&(level, class)| pairs[level][reps[level][class]].clone()).collect();
    Ok(Diagonal { complex: Arc::new(extraction.complex), mode, source: x.clone(), normal, origin })
}

/// Highest degree a cell of `diag X` can have.
fn required_bound(x: &BiComplex, mode: DiagonalMode) -> u32 {
    x.cells()
        .iter()
        .map(|cell| {
            let (a, b) = (cell.shape.first().unwrap(), cell.shape.second().unwrap());
            match mode {
                DiagonalMode::Day(p) => p.degree(a, b),
                DiagonalMode::Categorical => a.degree() + b.degree(),
            }
        })
        .max()
        .unwrap_or(0)
}

/// The output bound used when none is requested.
pub fn default_bound(x: &BiComplex, mode: DiagonalMode) -> u32 {
    match mode {
        DiagonalMode::Day(PromonoidalStructure::Join) => x.instance().bound() + 1,
        _ => x.instance().bound(),
    }
}

/// `diag X` for the given mode, over the base with the given output bound.
pub fn diagonal_with_bound(x: &Arc<BiComplex>, mode: DiagonalMode, bound: u32) -> Result<Diagonal> {
    let base = base_of(x)?;
    if let DiagonalMode::Day(p) = mode {
        p.check_base(&base)?;
    }
    let required = required_bound(x, mode);
    if required > bound {
        return Err(Error::InsufficientBound { required, available: bound });
    }
    let instance = CategoryInstance::new(base.clone(), bound);
    match mode {
        DiagonalMode::Categorical => build(
            x,
            mode,
            &instance,
            |c, y| {
                let shape = &x.cells()[y].shape;
                let diag = Object::pair(c.clone(), c.clone());
                x.instance().category().hom(&diag, shape).iter().filter(|s| s.is_minus()).cloned().collect()
            },
            |y, p, theta| {
                let e = x.act_unchecked(&Element { sigma: p.clone(), cell: y }, &Morphism::pair(theta.clone(), theta.clone()));
                (e.cell, e.sigma)
            },
            |_, _| {},
        ),
        DiagonalMode::Day(p) => {
            let product = x.instance().category().clone();
            build(
                x,
                mode,
                &instance,
                |c, y| {
                    let shape = &x.cells()[y].shape;
                    p.elements(&base, c, shape.first().unwrap(), shape.second().unwrap())
                },
                |y, q, theta| (y, p.restrict(q, theta)),
                |c, relate| {
                    for (y, cell) in x.cells().iter().enumerate() {
                        for phi in product.plus_into(&cell.shape).iter().filter(|f| !f.is_identity()) {
                            let face = x.face(y, phi);
                            let dom = phi.domain();
                            for q in p.elements(&base, c, dom.first().unwrap(), dom.second().unwrap()) {
                                relate((y, p.push(phi, &q)), (face.cell, p.push(&face.sigma, &q)));
                            }
                        }
                    }
                },
            )
        }
    }
}

pub fn diagonal(x: &Arc<BiComplex>, mode: DiagonalMode) -> Result<Diagonal> {
    diagonal_with_bound(x, mode, default_bound(x, mode))
}

/// `X ↦ X(a, a)`.
pub fn diagonal_categorical(x: &Arc<BiComplex>) -> Result<CellComplex> {
    Ok((*diagonal(x, DiagonalMode::Categorical)?.complex).clone())
}

/// The coend `∫^{(a,a')} X(a,a') × (a ⊗ a')`.
pub fn day_diagonal(x: &Arc<BiComplex>, p: PromonoidalStructure) -> Result<CellComplex> {
    Ok((*diagonal(x, DiagonalMode::Day(p))?.complex).clone())
}

/// `K ⊗ L = diag(K ⊠ L)`; the categorical product for the categorical structure.
pub fn tensor(k: &CellComplex, l: &CellComplex, p: PromonoidalStructure) -> Result<CellComplex> {
    match p {
        PromonoidalStructure::CategoricalProduct => {
            p.check_base(k.instance().category())?;
            categorical_product(k, l)
        }
        _ => day_diagonal(&Arc::new(external_product(k, l)?), p),
    }
}

/// `diag f: diag X → diag Y`.
pub fn induced_map(f: &BiComplexMap, mode: DiagonalMode) -> Result<(Diagonal, Diagonal, ComplexMap)> {
    let bound = default_bound(f.source(), mode).max(default_bound(f.target(), mode));
    let dx = diagonal_with_bound(f.source(), mode, bound)?;
    let dy = diagonal_with_bound(f.target(), mode, bound)?;
    let images = dx
        .origin
        .iter()
        .map(|(y, p)| {
            let image = &f.images()[*y];
            let q = match mode {
                DiagonalMode::Categorical => compose_unchecked(&image.sigma, p),
                DiagonalMode::Day(s) => s.push(&image.sigma, p),
            };
            dy.class_of(image.cell, &q)
        })
        .collect();
    let map = ComplexMap::new(dx.complex.clone(), dy.complex.clone(), images)?;
    Ok((dx, dy, map))
}

/// The levelwise product `(K × L)_a = K_a × L_a`, computed directly.
pub fn categorical_product(k: &CellComplex, l: &CellComplex) -> Result<CellComplex> {
    if k.instance().category() != l.instance().category() {
        return Err(Error::InstanceMismatch(k.instance().to_string(), l.instance().to_string()));
    }
    let bound = k.instance().bound() + l.instance().bound();
    let instance = k.instance().with_bound(bound);
    let objects = instance.objects();
    let left: Vec<Vec<Element>> = objects.iter().map(|a| k.evaluate(a)).collect();
    let right: Vec<Vec<Element>> = objects.iter().map(|a| l.evaluate(a)).collect();
    let index = |v: &Vec<Element>| -> HashMap<Element, usize> { v.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect() };
    let left_index: Vec<_> = left.iter().map(index).collect();
    let right_index: Vec<_> = right.iter().map(index).collect();
    let level_of: HashMap<Object, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    let table = LevelTable::build(
        &instance,
        |level, _| left[level].len() * right[level].len(),
        |theta, i| {
            let (from, to) = (level_of[&theta.codomain()], level_of[&theta.domain()]);
            let width = right[from].len();
            let x = k.act_unchecked(&left[from][i / width], theta);
            let y = l.act_unchecked(&right[from][i % width], theta);
            left_index[to][&x] * right[to].len() + right_index[to][&y]
        },
    );
    let extraction = table.extract(|level, i| {
        let width = right[level].len();
        format!("{}×{}", k.format_element(&left[level][i / width]), l.format_element(&right[level][i % width]))
    })?;
    Ok(extraction.complex)
}

#[cfg(test)]
mod tests;
