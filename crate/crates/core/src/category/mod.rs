//! Finitely enumerable Eilenberg-Zilber categories.
//!
//! Five kinds are built in: the simplex category, the minimal box category,
//! the box category with (max-type) connections, binary products and slices
//! `a ↓ A`. Objects and arrows are plain values; every arrow is stored in a
//! canonical encoding so equality of values is equality of arrows.
//!
//! Degree is additive on products. The multiplicative convention
//! `deg(a, b) = deg a · deg b` breaks the requirement that non-identity
//! face-type arrows raise degree as soon as one factor has degree zero.

mod cube;
mod latching;
mod simplex;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use cube::CubeCoord;
pub use latching::{LatchingArrow, LatchingCategory};

use crate::error::{Error, Result};

/// An object of one of the built-in categories.
///
/// `Simplex(m)` is `[m]`, `Cube(n)` is `[1]^n`, `Pair` an object of a
/// product and `Under(φ)` the object `φ: a → b` of the slice `a ↓ A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Object {
    Simplex(u32),
    Cube(u32),
    Pair(Box<Object>, Box<Object>),
    Under(Box<Morphism>),
}

/// An arrow in canonical encoding.
///
/// * `Simplex`: the monotone map `[values.len() - 1] → [cod]` as its value list.
/// * `Cube`: a map `[1]^dom → [1]^coords.len()` given per output coordinate.
/// * `Pair`: an arrow of a product category.
/// * `Under`: the arrow `arrow: (source) → (arrow ∘ source)` of a slice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Morphism {
    Simplex { cod: u32, values: Vec<u32> },
    Cube { dom: u32, coords: Vec<CubeCoord> },
    Pair(Box<Morphism>, Box<Morphism>),
    Under { source: Box<Morphism>, arrow: Box<Morphism> },
}

impl Object {
    pub fn pair(a: Object, b: Object) -> Object {
        Object::Pair(Box::new(a), Box::new(b))
    }

    /// Degree read off the encoding. Products add, slices use the codomain.
    pub fn degree(&self) -> u32 {
        match self {
            Object::Simplex(m) => *m,
            Object::Cube(n) => *n,
            Object::Pair(a, b) => a.degree() + b.degree(),
            Object::Under(phi) => phi.codomain().degree(),
        }
    }

    pub fn first(&self) -> Option<&Object> {
        match self {
            Object::Pair(a, _) => Some(a),
            _ => None,
        }
    }

    pub fn second(&self) -> Option<&Object> {
        match self {
            Object::Pair(_, b) => Some(b),
            _ => None,
        }
    }
}

impl Morphism {
    pub fn pair(f: Morphism, g: Morphism) -> Morphism {
        Morphism::Pair(Box::new(f), Box::new(g))
    }

    pub fn identity(object: &Object) -> Morphism {
        match object {
            Object::Simplex(m) => Morphism::Simplex { cod: *m, values: (0..=*m).collect() },
            Object::Cube(n) => Morphism::Cube {
                dom: *n,
                coords: (0..*n).map(CubeCoord::Var).collect(),
            },
            Object::Pair(a, b) => Morphism::pair(Morphism::identity(a), Morphism::identity(b)),
            Object::Under(phi) => Morphism::Under {
                source: phi.clone(),
                arrow: Box::new(Morphism::identity(&phi.codomain())),
            },
        }
    }

    pub fn domain(&self) -> Object {
        match self {
            Morphism::Simplex { values, .. } => Object::Simplex(values.len() as u32 - 1),
            Morphism::Cube { dom, .. } => Object::Cube(*dom),
            Morphism::Pair(f, g) => Object::pair(f.domain(), g.domain()),
            Morphism::Under { source, .. } => Object::Under(source.clone()),
        }
    }

    pub fn codomain(&self) -> Object {
        match self {
            Morphism::Simplex { cod, .. } => Object::Simplex(*cod),
            Morphism::Cube { coords, .. } => Object::Cube(coords.len() as u32),
            Morphism::Pair(f, g) => Object::pair(f.codomain(), g.codomain()),
            Morphism::Under { source, arrow } => {
                Object::Under(Box::new(compose_unchecked(arrow, source)))
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Morphism::Simplex { cod, values } => {
                values.len() as u32 == cod + 1 && values.iter().enumerate().all(|(i, &v)| v == i as u32)
            }
            Morphism::Cube { dom, coords } => {
                coords.len() as u32 == *dom
                    && coords.iter().enumerate().all(|(i, c)| *c == CubeCoord::Var(i as u32))
            }
            Morphism::Pair(f, g) => f.is_identity() && g.is_identity(),
            Morphism::Under { arrow, .. } => arrow.is_identity(),
        }
    }

    /// Membership in the degree-lowering class `A-`.
    pub fn is_minus(&self) -> bool {
        match self {
            Morphism::Simplex { cod, values } => simplex::is_surjective(*cod, values),
            Morphism::Cube { coords, .. } => cube::is_minus(coords),
            Morphism::Pair(f, g) => f.is_minus() && g.is_minus(),
            Morphism::Under { arrow, .. } => arrow.is_minus(),
        }
    }

    /// Membership in the degree-raising class `A+`.
    pub fn is_plus(&self) -> bool {
        match self {
            Morphism::Simplex { values, .. } => simplex::is_injective(values),
            Morphism::Cube { dom, coords } => cube::is_plus(*dom, coords),
            Morphism::Pair(f, g) => f.is_plus() && g.is_plus(),
            Morphism::Under { arrow, .. } => arrow.is_plus(),
        }
    }

    pub fn first(&self) -> Option<&Morphism> {
        match self {
            Morphism::Pair(f, _) => Some(f),
            _ => None,
        }
    }

    pub fn second(&self) -> Option<&Morphism> {
        match self {
            Morphism::Pair(_, g) => Some(g),
            _ => None,
        }
    }
}

/// `g ∘ f` without checking that the arrows meet.
pub(crate) fn compose_unchecked(g: &Morphism, f: &Morphism) -> Morphism {
    match (g, f) {
        (Morphism::Simplex { cod, values: gv }, Morphism::Simplex { values: fv, .. }) => {
            Morphism::Simplex { cod: *cod, values: fv.iter().map(|&i| gv[i as usize]).collect() }
        }
        (Morphism::Cube { coords: gc, .. }, Morphism::Cube { dom, coords: fc }) => Morphism::Cube {
            dom: *dom,
            coords: gc.iter().map(|c| cube::substitute(c, fc)).collect(),
        },
        (Morphism::Pair(g1, g2), Morphism::Pair(f1, f2)) => {
            Morphism::pair(compose_unchecked(g1, f1), compose_unchecked(g2, f2))
        }
        (Morphism::Under { arrow: g, .. }, Morphism::Under { source, arrow: f }) => Morphism::Under {
            source: source.clone(),
            arrow: Box::new(compose_unchecked(g, f)),
        },
        _ => panic!("composing arrows of different categories: {g} after {f}"),
    }
}

/// `g ∘ f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    let (codomain, domain) = (f.codomain(), g.domain());
    if codomain != domain {
        return Err(Error::DomainMismatch { codomain, domain });
    }
    Ok(compose_unchecked(g, f))
}

/// The unique factorization `φ = plus ∘ minus` with `minus ∈ A-`, `plus ∈ A+`.
pub fn reedy_factorize(phi: &Morphism) -> (Morphism, Morphism) {
    match phi {
        Morphism::Simplex { cod, values } => simplex::factorize(*cod, values),
        Morphism::Cube { dom, coords } => cube::factorize(*dom, coords),
        Morphism::Pair(f, g) => {
            let (fm, fp) = reedy_factorize(f);
            let (gm, gp) = reedy_factorize(g);
            (Morphism::pair(fm, gm), Morphism::pair(fp, gp))
        }
        Morphism::Under { source, arrow } => {
            let (m, p) = reedy_factorize(arrow);
            let middle = compose_unchecked(&m, source);
            (
                Morphism::Under { source: source.clone(), arrow: Box::new(m) },
                Morphism::Under { source: Box::new(middle), arrow: Box::new(p) },
            )
        }
    }
}

/// A category kind, without a degree bound.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Simplex,
    BoxMinimal,
    BoxConnections,
    Product(Box<Category>, Box<Category>),
    /// The slice `a ↓ A` under the given object of the base.
    Slice(Box<Category>, Object),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum CacheKind {
    Hom,
    MinusFrom,
    PlusInto,
}

type CacheKey = (CacheKind, Category, Object, Option<Object>);

thread_local! {
    static ARROW_CACHE: RefCell<HashMap<CacheKey, Arc<[Morphism]>>> = RefCell::new(HashMap::new());
}

fn cached(key: CacheKey, build: impl FnOnce() -> Vec<Morphism>) -> Arc<[Morphism]> {
    if let Some(hit) = ARROW_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let value: Arc<[Morphism]> = build().into();
    ARROW_CACHE.with(|c| c.borrow_mut().insert(key, value.clone()));
    value
}

impl Category {
    pub fn product(a: Category, b: Category) -> Category {
        Category::Product(Box::new(a), Box::new(b))
    }

    pub fn is_cubical(&self) -> bool {
        matches!(self, Category::BoxMinimal | Category::BoxConnections)
    }

    pub fn factors(&self) -> Option<(&Category, &Category)> {
        match self {
            Category::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn contains_object(&self, object: &Object) -> bool {
        match (self, object) {
            (Category::Simplex, Object::Simplex(_)) => true,
            (Category::BoxMinimal | Category::BoxConnections, Object::Cube(_)) => true,
            (Category::Product(a, b), Object::Pair(x, y)) => a.contains_object(x) && b.contains_object(y),
            (Category::Slice(base, root), Object::Under(phi)) => {
                base.contains_morphism(phi) && phi.domain() == *root
            }
            _ => false,
        }
    }

    pub fn contains_morphism(&self, phi: &Morphism) -> bool {
        match (self, phi) {
            (Category::Simplex, Morphism::Simplex { cod, values }) => simplex::is_valid(*cod, values),
            (Category::BoxMinimal, Morphism::Cube { dom, coords }) => cube::is_valid(*dom, coords, false),
            (Category::BoxConnections, Morphism::Cube { dom, coords }) => cube::is_valid(*dom, coords, true),
            (Category::Product(a, b), Morphism::Pair(f, g)) => a.contains_morphism(f) && b.contains_morphism(g),
            (Category::Slice(base, root), Morphism::Under { source, arrow }) => {
                base.contains_morphism(source)
                    && source.domain() == *root
                    && base.contains_morphism(arrow)
                    && arrow.domain() == source.codomain()
            }
            _ => false,
        }
    }

    pub fn degree(&self, object: &Object) -> Result<u32> {
        if !self.contains_object(object) {
            return Err(Error::ForeignObject(object.clone(), self.to_string()));
        }
        Ok(object.degree())
    }

    /// All objects of degree at most `bound`, ordered by degree then encoding.
    pub fn objects_up_to(&self, bound: u32) -> Vec<Object> {
        let mut out = match self {
            Category::Simplex => (0..=bound).map(Object::Simplex).collect(),
            Category::BoxMinimal | Category::BoxConnections => (0..=bound).map(Object::Cube).collect(),
            Category::Product(a, b) => {
                let left = a.objects_up_to(bound);
                let right = b.objects_up_to(bound);
                let mut v = Vec::new();
                for x in &left {
                    for y in &right {
                        if x.degree() + y.degree() <= bound {
                            v.push(Object::pair(x.clone(), y.clone()));
                        }
                    }
                }
                v
            }
            Category::Slice(base, root) => base
                .objects_up_to(bound)
                .iter()
                .flat_map(|b| base.hom(root, b).iter().cloned().collect::<Vec<_>>())
                .map(|phi| Object::Under(Box::new(phi)))
                .collect(),
        };
        out.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.cmp(y)));
        out
    }

    /// Every arrow `b → a`, duplicate-free, in canonical (lexicographic) order.
    pub fn hom(&self, b: &Object, a: &Object) -> Arc<[Morphism]> {
        cached((CacheKind::Hom, self.clone(), b.clone(), Some(a.clone())), || {
            let mut v = match (self, b, a) {
                (Category::Simplex, Object::Simplex(n), Object::Simplex(m)) => simplex::hom(*n, *m),
                (Category::BoxMinimal, Object::Cube(n), Object::Cube(m)) => cube::hom(*n, *m, false),
                (Category::BoxConnections, Object::Cube(n), Object::Cube(m)) => cube::hom(*n, *m, true),
                (Category::Product(c1, c2), Object::Pair(b1, b2), Object::Pair(a1, a2)) => {
                    let left = c1.hom(b1, a1);
                    let right = c2.hom(b2, a2);
                    let mut v = Vec::with_capacity(left.len() * right.len());
                    for f in left.iter() {
                        for g in right.iter() {
                            v.push(Morphism::pair(f.clone(), g.clone()));
                        }
                    }
                    v
                }
                (Category::Slice(base, _), Object::Under(phi), Object::Under(psi)) => base
                    .hom(&phi.codomain(), &psi.codomain())
                    .iter()
                    .filter(|g| compose_unchecked(g, phi) == **psi)
                    .map(|g| Morphism::Under { source: phi.clone(), arrow: Box::new(g.clone()) })
                    .collect(),
                _ => Vec::new(),
            };
            v.sort();
            v
        })
    }

    /// All arrows of `A-` with domain `a`, identity included.
    pub fn minus_from(&self, a: &Object) -> Arc<[Morphism]> {
        cached((CacheKind::MinusFrom, self.clone(), a.clone(), None), || {
            self.objects_up_to(a.degree())
                .iter()
                .flat_map(|b| self.hom(a, b).iter().filter(|f| f.is_minus()).cloned().collect::<Vec<_>>())
                .collect()
        })
    }

    /// All arrows of `A+` with codomain `a`, identity included.
    pub fn plus_into(&self, a: &Object) -> Arc<[Morphism]> {
        cached((CacheKind::PlusInto, self.clone(), a.clone(), None), || {
            self.objects_up_to(a.degree())
                .iter()
                .flat_map(|c| self.hom(c, a).iter().filter(|f| f.is_plus()).cloned().collect::<Vec<_>>())
                .collect()
        })
    }

    /// Generating faces into `a`: arrows of `A+` raising degree by exactly one.
    pub fn face_generators(&self, a: &Object) -> Vec<Morphism> {
        let d = a.degree();
        self.plus_into(a)
            .iter()
            .filter(|f| f.domain().degree() + 1 == d)
            .cloned()
            .collect()
    }

    /// Generating degeneracies (and connections) out of `a`.
    pub fn degeneracy_generators(&self, a: &Object) -> Vec<Morphism> {
        let d = a.degree();
        self.minus_from(a)
            .iter()
            .filter(|f| f.codomain().degree() + 1 == d)
            .cloned()
            .collect()
    }

    /// The set of sections `s` of `σ ∈ A-`, i.e. `σ ∘ s = id`.
    pub fn sections(&self, sigma: &Morphism) -> Result<Vec<Morphism>> {
        if !sigma.is_minus() || !self.contains_morphism(sigma) {
            return Err(Error::NotMinus(sigma.clone()));
        }
        let id = Morphism::identity(&sigma.codomain());
        Ok(self
            .hom(&sigma.codomain(), &sigma.domain())
            .iter()
            .filter(|s| compose_unchecked(sigma, s) == id)
            .cloned()
            .collect())
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::Simplex => write!(f, "simplex"),
            Category::BoxMinimal => write!(f, "box"),
            Category::BoxConnections => write!(f, "boxc"),
            Category::Product(a, b) if a == b => write!(f, "product:{a}"),
            Category::Product(a, b) => write!(f, "product:{a},{b}"),
            Category::Slice(base, root) => write!(f, "slice:{base}@{root}"),
        }
    }
}

impl std::str::FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let base = |t: &str| match t {
            "simplex" => Ok(Category::Simplex),
            "box" => Ok(Category::BoxMinimal),
            "boxc" => Ok(Category::BoxConnections),
            other => Err(format!("unknown category `{other}`")),
        };
        if let Some(rest) = s.strip_prefix("product:") {
            return match rest.split_once(',') {
                Some((a, b)) => Ok(Category::product(base(a)?, base(b)?)),
                None => Ok(Category::product(base(rest)?, base(rest)?)),
            };
        }
        if let Some(rest) = s.strip_prefix("slice:") {
            let (b, obj) = rest.split_once('@').ok_or_else(|| format!("slice needs `<base>@<object>`: `{s}`"))?;
            let category = base(b)?;
            let root = crate::text::parse_object(&category, obj)?;
            return Ok(Category::Slice(Box::new(category), root));
        }
        base(s)
    }
}

/// A category together with the mandatory degree bound `D`.
///
/// Every "for all objects" quantifier over an instance ranges over the
/// objects of degree at most `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CategoryInstance {
    category: Category,
    bound: u32,
}

impl CategoryInstance {
    pub fn new(category: Category, bound: u32) -> Self {
        Self { category, bound }
    }

    pub fn simplex(bound: u32) -> Self {
        Self::new(Category::Simplex, bound)
    }

    pub fn box_minimal(bound: u32) -> Self {
        Self::new(Category::BoxMinimal, bound)
    }

    pub fn box_connections(bound: u32) -> Self {
        Self::new(Category::BoxConnections, bound)
    }

    /// Product instance whose bound is the sum of the factor bounds.
    pub fn product(a: &CategoryInstance, b: &CategoryInstance) -> Self {
        Self::new(Category::product(a.category.clone(), b.category.clone()), a.bound + b.bound)
    }

    pub fn category(&self) -> &Category {
        &self.category
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn with_bound(&self, bound: u32) -> Self {
        Self::new(self.category.clone(), bound)
    }

    /// The factor categories of a product instance, each carrying the full bound.
    pub fn factors(&self) -> Option<(CategoryInstance, CategoryInstance)> {
        self.category.factors().map(|(a, b)| {
            (CategoryInstance::new(a.clone(), self.bound), CategoryInstance::new(b.clone(), self.bound))
        })
    }

    pub fn objects(&self) -> Vec<Object> {
        self.category.objects_up_to(self.bound)
    }

    pub fn degree(&self, object: &Object) -> Result<u32> {
        self.category.degree(object)
    }

    fn check_bound(&self, object: &Object) -> Result<()> {
        let degree = self.degree(object)?;
        if degree > self.bound {
            return Err(Error::BoundExceeded { degree, bound: self.bound });
        }
        Ok(())
    }

    pub fn hom(&self, b: &Object, a: &Object) -> Result<Arc<[Morphism]>> {
        self.check_bound(b)?;
        self.check_bound(a)?;
        Ok(self.category.hom(b, a))
    }

    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        for phi in [g, f] {
            if !self.category.contains_morphism(phi) {
                return Err(Error::ForeignMorphism(phi.clone(), self.category.to_string()));
            }
        }
        compose(g, f)
    }

    pub fn reedy_factorize(&self, phi: &Morphism) -> Result<(Morphism, Morphism)> {
        if !self.category.contains_morphism(phi) {
            return Err(Error::ForeignMorphism(phi.clone(), self.category.to_string()));
        }
        Ok(reedy_factorize(phi))
    }

    pub fn sections(&self, sigma: &Morphism) -> Result<Vec<Morphism>> {
        self.check_bound(&sigma.domain())?;
        self.category.sections(sigma)
    }

    pub fn latching_category(&self, a: &Object) -> Result<LatchingCategory> {
        self.check_bound(a)?;
        Ok(LatchingCategory::new(&self.category, a))
    }
}

impl fmt::Display for CategoryInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (degree bound {})", self.category, self.bound)
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Simplex(m) => write!(f, "{m}"),
            Object::Cube(n) => write!(f, "{n}"),
            Object::Pair(a, b) => write!(f, "({a},{b})"),
            Object::Under(phi) => write!(f, "<{phi}:{}>", phi.codomain()),
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Morphism::Simplex { values, .. } => {
                write!(f, "[")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
            Morphism::Cube { coords, .. } => {
                write!(f, "[")?;
                for (i, c) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
            Morphism::Pair(a, b) => write!(f, "({a};{b})"),
            Morphism::Under { source, arrow } => write!(f, "<{source}|{arrow}>"),
        }
    }
}
