//! Presheaves on `A × A`: external products, currying, latching objects and
//! the pushout square building `SkⁿX` from `Sk^{n−1}X`.
//!
//! A bicomplex is a [`CellComplex`] over a product instance. Skeleta of
//! bicomplexes truncate the second coordinate only.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{compose_unchecked, reedy_factorize, Category, CategoryInstance, LatchingCategory, Morphism, Object};
use crate::error::{Error, Result};
use crate::presheaf::levels::{LevelTable, UnionFind};
use crate::presheaf::{
    coproduct, is_pushout, pushout, Cell, CellComplex, CellId, ComplexMap, Element, Representable, Square,
};

pub type BiComplex = CellComplex;
pub type BiComplexMap = ComplexMap;

/// The factor instances of a bicomplex, each with the full bound.
fn base_of(x: &BiComplex) -> Result<(CategoryInstance, CategoryInstance)> {
    x.instance()
        .factors()
        .ok_or_else(|| Error::UnsupportedBase(format!("{} is not a product category", x.instance().category())))
}

fn split(phi: &Morphism) -> (&Morphism, &Morphism) {
    (phi.first().expect("pair arrow"), phi.second().expect("pair arrow"))
}

/// `K ⊠ L` with cells `y*z`, over the product instance with the summed bound.
pub fn external_product(k: &CellComplex, l: &CellComplex) -> Result<BiComplex> {
    if k.instance().category() != l.instance().category() {
        return Err(Error::InstanceMismatch(k.instance().to_string(), l.instance().to_string()));
    }
    let instance = CategoryInstance::product(k.instance(), l.instance());
    let category = instance.category().clone();
    let width = l.len();
    let mut cells = Vec::with_capacity(k.len() * width);
    let mut faces = Vec::with_capacity(k.len() * width);
    for (y, ky) in k.cells().iter().enumerate() {
        for (z, lz) in l.cells().iter().enumerate() {
            let shape = Object::pair(ky.shape.clone(), lz.shape.clone());
            let table: HashMap<Morphism, Element> = category
                .plus_into(&shape)
                .iter()
                .filter(|phi| !phi.is_identity())
                .map(|phi| {
                    let (p, q) = split(phi);
                    let (a, b) = (k.face(y, p), l.face(z, q));
                    (phi.clone(), Element { sigma: Morphism::pair(a.sigma, b.sigma), cell: a.cell * width + b.cell })
                })
                .collect();
            cells.push(Cell { name: format!("{}*{}", ky.name, lz.name), shape });
            faces.push(table);
        }
    }
    Ok(CellComplex::assemble(instance, cells, faces))
}

/// `f ⊠ g: K ⊠ L → K' ⊠ L'` between the given external products.
pub fn external_product_map(
    f: &ComplexMap,
    g: &ComplexMap,
    source: Arc<BiComplex>,
    target: Arc<BiComplex>,
) -> Result<BiComplexMap> {
    let width = g.source().len();
    let target_width = g.target().len();
    if source.len() != f.source().len() * width || target.len() != f.target().len() * target_width {
        return Err(Error::NotNatural("external product map between mismatched complexes".into()));
    }
    let mut images = Vec::with_capacity(source.len());
    for a in f.images() {
        for b in g.images() {
            images.push(Element {
                sigma: Morphism::pair(a.sigma.clone(), b.sigma.clone()),
                cell: a.cell * target_width + b.cell,
            });
        }
    }
    ComplexMap::new(source, target, images)
}

/// `X_a = X(−, a)`, the presheaf on `A` obtained by fixing the second
/// coordinate. Each cell is an element `x·(id, σ)` of `X` with `σ ∈ A-`.
#[derive(Clone, Debug)]
pub struct Curried {
    pub complex: Arc<CellComplex>,
    pub level: Object,
    sources: Vec<(Morphism, CellId)>,
    index: HashMap<(Morphism, CellId), CellId>,
}

impl Curried {
    /// The element of `X` at `(c, a)` a curried element stands for.
    pub fn to_bi(&self, x: &Element) -> Element {
        let (sigma, cell) = &self.sources[x.cell];
        Element { sigma: Morphism::pair(x.sigma.clone(), sigma.clone()), cell: *cell }
    }

    pub fn from_bi(&self, x: &Element) -> Element {
        let (first, second) = split(&x.sigma);
        Element { sigma: first.clone(), cell: self.index[&(second.clone(), x.cell)] }
    }
}

pub fn curry_level(x: &BiComplex, a: &Object) -> Result<Curried> {
    let (first, second) = base_of(x)?;
    if !second.category().contains_object(a) {
        return Err(Error::ForeignObject(a.clone(), second.category().to_string()));
    }
    let mut sources = Vec::new();
    let mut cells = Vec::new();
    for sigma in second.category().minus_from(a).iter() {
        for (y, cell) in x.cells().iter().enumerate() {
            let Object::Pair(c, b) = &cell.shape else { unreachable!("bicomplex shapes are pairs") };
            if **b == sigma.codomain() {
                let name = if sigma.is_identity() {
                    cell.name.clone()
                } else {
                    format!("{}·{}", cell.name, crate::text::format_degeneracy(sigma))
                };
                sources.push((sigma.clone(), y));
                cells.push(Cell { name, shape: (**c).clone() });
            }
        }
    }
    let index: HashMap<(Morphism, CellId), CellId> =
        sources.iter().cloned().enumerate().map(|(i, key)| (key, i)).collect();
    let category = first.category().clone();
    let faces = sources
        .iter()
        .zip(&cells)
        .map(|((sigma, y), cell)| {
            let element = Element { sigma: Morphism::pair(Morphism::identity(&cell.shape), sigma.clone()), cell: *y };
            category
                .plus_into(&cell.shape)
                .iter()
                .filter(|phi| !phi.is_identity())
                .map(|phi| {
                    let face = x.act_unchecked(&element, &Morphism::pair(phi.clone(), Morphism::identity(a)));
                    let (s1, s2) = split(&face.sigma);
                    (phi.clone(), Element { sigma: s1.clone(), cell: index[&(s2.clone(), face.cell)] })
                })
                .collect()
        })
        .collect();
    let complex = Arc::new(CellComplex::assemble(first, cells, faces));
    Ok(Curried { complex, level: a.clone(), sources, index })
}

/// `f_a: X_a → Y_a`.
pub fn curry_map(f: &BiComplexMap, a: &Object) -> Result<(Curried, Curried, ComplexMap)> {
    let xa = curry_level(f.source(), a)?;
    let ya = curry_level(f.target(), a)?;
    let images = (0..xa.complex.len())
        .map(|k| {
            let shape = &xa.complex.cells()[k].shape;
            ya.from_bi(&f.apply_unchecked(&xa.to_bi(&Element::cell(k, shape))))
        })
        .collect();
    let map = ComplexMap::new(xa.complex.clone(), ya.complex.clone(), images)?;
    Ok((xa, ya, map))
}

/// `L_aX`, the colimit of `X_b` over the latching category of `a`, with
/// the comparison map `L_aX → X_a`.
#[derive(Clone, Debug)]
pub struct Latching {
    pub complex: Arc<CellComplex>,
    pub comparison: ComplexMap,
    pub curried: Curried,
    /// Degeneracies `σ: a → b` indexing the diagram.
    pub diagram: Vec<Morphism>,
    /// Normal form in `L_aX` of each pair `(diagram index, element of X)`.
    normal: HashMap<(usize, Element), Element>,
    /// The pair each latching cell was extracted from.
    origin: Vec<(usize, Element)>,
}

impl Latching {
    /// The class of `(σᵢ, x)` in `L_aX`.
    pub fn class_of(&self, index: usize, x: &Element) -> Option<&Element> {
        self.normal.get(&(index, x.clone()))
    }

    pub fn origin(&self, cell: CellId) -> &(usize, Element) {
        &self.origin[cell]
    }
}

pub fn latching_object(x: &BiComplex, a: &Object) -> Result<Latching> {
    let (first, second) = base_of(x)?;
    let curried = curry_level(x, a)?;
    let latching = LatchingCategory::new(second.category(), a);
    let diagram = latching.objects.clone();
    let objects = first.objects();

    // blocks[level][i]: elements of X at (c, cod σᵢ)
    let blocks: Vec<Vec<Vec<Element>>> = objects
        .iter()
        .map(|c| diagram.iter().map(|s| x.evaluate(&Object::pair(c.clone(), s.codomain()))).collect())
        .collect();
    let offsets: Vec<Vec<usize>> = blocks
        .iter()
        .map(|bs| {
            bs.iter()
                .scan(0, |acc, b| {
                    let start = *acc;
                    *acc += b.len();
                    Some(start)
                })
                .collect()
        })
        .collect();
    let lookup: Vec<Vec<HashMap<Element, usize>>> = blocks
        .iter()
        .map(|bs| bs.iter().map(|b| b.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect()).collect())
        .collect();
    let level_of: HashMap<Object, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    let locate = |level: usize, flat: usize| {
        let i = offsets[level].partition_point(|&o| o <= flat) - 1;
        (i, flat - offsets[level][i])
    };

    let table = LevelTable::build(
        &first,
        |level, _| blocks[level].iter().map(Vec::len).sum(),
        |phi, flat| {
            let from = level_of[&phi.codomain()];
            let to = level_of[&phi.domain()];
            let (i, j) = locate(from, flat);
            let b = diagram[i].codomain();
            let image = x.act_unchecked(&blocks[from][i][j], &Morphism::pair(phi.clone(), Morphism::identity(&b)));
            offsets[to][i] + lookup[to][i][&image]
        },
    );
    let (quotient, class_of, reps) = table.quotient(|level, uf: &mut UnionFind| {
        for arrow in &latching.arrows {
            let c = &objects[level];
            let tau = Morphism::pair(Morphism::identity(c), arrow.morphism.clone());
            for (j, target) in blocks[level][arrow.target].iter().enumerate() {
                let moved = x.act_unchecked(target, &tau);
                let i = lookup[level][arrow.source][&moved];
                uf.union(offsets[level][arrow.source] + i, offsets[level][arrow.target] + j);
            }
        }
    });
    let extraction = quotient.extract(|level, class| {
        let (i, j) = locate(level, reps[level][class]);
        format!("{}|{}", x.format_element(&blocks[level][i][j]), diagram[i])
    })?;

    let mut normal = HashMap::new();
    for (level, bs) in blocks.iter().enumerate() {
        for (i, b) in bs.iter().enumerate() {
            for (j, e) in b.iter().enumerate() {
                let class = class_of[level][offsets[level][i] + j];
                normal.insert((i, e.clone()), extraction.normal[level][class].clone());
            }
        }
    }
    let origin: Vec<(usize, Element)> = extraction
        .origin
        .iter()
        .map(|&(level, class)| {
            let (i, j) = locate(level, reps[level][class]);
            (i, blocks[level][i][j].clone())
        })
        .collect();
    let complex = Arc::new(extraction.complex);
    let images = origin
        .iter()
        .map(|(i, e)| {
            let c = e.shape().first().expect("pair shape").clone();
            let moved = x.act_unchecked(e, &Morphism::pair(Morphism::identity(&c), diagram[*i].clone()));
            curried.from_bi(&moved)
        })
        .collect();
    let comparison = ComplexMap::new(complex.clone(), curried.complex.clone(), images)?;
    Ok(Latching { complex, comparison, curried, diagram, normal, origin })
}

/// The map `L_bX → L_bY` induced by `f: X → Y`.
pub fn latching_map(f: &BiComplexMap, b: &Object) -> Result<(Latching, Latching, ComplexMap)> {
    let lx = latching_object(f.source(), b)?;
    let ly = latching_object(f.target(), b)?;
    let images = lx
        .origin
        .iter()
        .map(|(i, e)| {
            ly.class_of(*i, &f.apply_unchecked(e))
                .cloned()
                .ok_or_else(|| Error::NotAnElement("latching image outside the diagram".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = ComplexMap::new(lx.complex.clone(), ly.complex.clone(), images)?;
    Ok((lx, ly, map))
}

/// Outcome of comparing `L_b⟦(a, a')⟧` at `c` with `A(c, a) × {f: b → a' | f₋ ≠ id}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatchingFormula {
    pub colimit_size: usize,
    pub formula_size: usize,
    /// The comparison into `⟦(a, a')⟧` at `(c, b)` is injective with the predicted image.
    pub identified: bool,
    /// The identification commutes with the maps induced by generating arrows out of `(a, a')`.
    pub natural: bool,
}

impl LatchingFormula {
    pub fn holds(&self) -> bool {
        self.colimit_size == self.formula_size && self.identified && self.natural
    }
}

/// Identify each latching element of a representable at `c` with an arrow `(c, b) → (a, a')`.
fn identify(latching: &Latching, rep: &Representable, c: &Object) -> Vec<(Element, Morphism)> {
    latching
        .complex
        .evaluate(c)
        .into_iter()
        .map(|l| {
            let image = latching.curried.to_bi(&latching.comparison.apply_unchecked(&l));
            (l, rep.arrow_of(&image))
        })
        .collect()
}

pub fn latching_formula_check(
    base: &CategoryInstance,
    a: &Object,
    a_prime: &Object,
    b: &Object,
    c: &Object,
) -> Result<LatchingFormula> {
    let category = base.category();
    for o in [a, a_prime, b, c] {
        base.degree(o)?;
    }
    let instance = CategoryInstance::product(base, base);
    let shape = Object::pair(a.clone(), a_prime.clone());
    let rep = Representable::new(&instance, &shape)?;
    let x = Arc::new(rep.complex.clone());
    let latching = latching_object(&x, b)?;
    let found = identify(&latching, &rep, c);

    let nondegenerate_part: Vec<Morphism> =
        category.hom(b, a_prime).iter().filter(|f| !reedy_factorize(f).0.is_identity()).cloned().collect();
    let formula_size = category.hom(c, a).len() * nondegenerate_part.len();

    let mut image: Vec<Morphism> = found.iter().map(|(_, w)| w.clone()).collect();
    image.sort();
    let injective = image.windows(2).all(|w| w[0] != w[1]);
    let mut predicted: Vec<Morphism> = category
        .hom(c, a)
        .iter()
        .flat_map(|g| nondegenerate_part.iter().map(move |f| Morphism::pair(g.clone(), f.clone())))
        .collect();
    predicted.sort();
    let identified = injective && image == predicted;

    // naturality in (a, a') along identities and generating arrows out of each slot
    let moves = |o: &Object| -> Vec<Morphism> {
        let mut out = vec![Morphism::identity(o)];
        out.extend(category.degeneracy_generators(o));
        for target in base.objects() {
            out.extend(category.face_generators(&target).into_iter().filter(|f| f.domain() == *o));
        }
        out
    };
    let mut natural = true;
    for u in moves(a) {
        for v in moves(a_prime) {
            let w = Morphism::pair(u.clone(), v.clone());
            let target_shape = w.codomain();
            let target_rep = Representable::new(&instance, &target_shape)?;
            let y = Arc::new(target_rep.complex.clone());
            let images = rep.arrows.iter().map(|g| target_rep.element_of(&compose_unchecked(&w, g))).collect();
            let yoneda = ComplexMap::new(x.clone(), y, images)?;
            let (_, target_latching, induced) = latching_map(&yoneda, b)?;
            let after: HashMap<Element, Morphism> =
                identify(&target_latching, &target_rep, c).into_iter().collect();
            for (l, arrow) in &found {
                natural &= after[&induced.apply_unchecked(l)] == compose_unchecked(&w, arrow);
            }
        }
    }
    Ok(LatchingFormula { colimit_size: found.len(), formula_size, identified, natural })
}

/// `Skⁿ X`: cells whose second coordinate has degree at most `n`.
pub fn bi_skeleton(x: &Arc<BiComplex>, n: i64) -> Result<(Arc<BiComplex>, BiComplexMap)> {
    base_of(x)?;
    let (sub, kept) = x.subcomplex(|_, cell| {
        let second = cell.shape.second().expect("pair shape");
        (second.degree() as i64) <= n
    })?;
    let sub = Arc::new(sub);
    let images = kept.iter().map(|&y| Element::cell(y, &x.cells()[y].shape)).collect();
    Ok((sub.clone(), ComplexMap::new(sub, x.clone(), images)?))
}

/// The square of the skeletal induction for bicomplexes, with its verdict.
#[derive(Clone, Debug)]
pub struct EzSquare {
    pub square: Square,
    pub is_pushout: bool,
    /// The objects `a` of degree `n` indexing the coproducts.
    pub index: Vec<Object>,
}

fn rebind(complex: &CellComplex, bound: u32) -> Result<Arc<CellComplex>> {
    Ok(Arc::new(complex.rebound(bound)?))
}

/// Inverse of a subcomplex inclusion on cells.
fn restrict(inclusion: &ComplexMap, e: &Element) -> Result<Element> {
    inclusion
        .images()
        .iter()
        .position(|img| img.cell == e.cell)
        .map(|cell| Element { sigma: e.sigma.clone(), cell })
        .ok_or_else(|| Error::NotAnElement(format!("cell {} is outside the skeleton", e.cell)))
}

/// ```text
///   ∐ₐ (LₐX ⊠ ⟦a⟧ ∪ Xₐ ⊠ ∂⟦a⟧) ---> Sk^{n−1} X
///              |                        |
///        ∐ₐ Xₐ ⊠ ⟦a⟧  ------------->  Skⁿ X
/// ```
/// over the objects `a` of degree `n`, the corner union taken over `LₐX ⊠ ∂⟦a⟧`.
pub fn ez_square(x: &Arc<BiComplex>, n: i64) -> Result<EzSquare> {
    let (first, second) = base_of(x)?;
    let index: Vec<Object> = if n < 0 {
        Vec::new()
    } else {
        second.category().objects_up_to(n as u32).into_iter().filter(|a| a.degree() as i64 == n).collect()
    };

    struct Piece {
        corner: Arc<CellComplex>,
        cell: Arc<CellComplex>,
        left: ComplexMap,
        top: ComplexMap,
        bottom: ComplexMap,
    }

    let mut pieces_raw = Vec::new();
    let mut bound = x.instance().bound();
    for a in &index {
        let lat = latching_object(x, a)?;
        let rep = Representable::new(&CategoryInstance::new(second.category().clone(), a.degree()), a)?;
        let rep_complex = Arc::new(rep.complex.clone());
        let (bdry, bdry_incl) = rep_complex.skeleton(n - 1)?;
        for part in [&lat.complex, &lat.curried.complex] {
            bound = bound.max(part.max_degree().map_or(0, |d| d + a.degree()));
        }
        pieces_raw.push((lat, rep, rep_complex, bdry, bdry_incl));
    }
    let product_instance = CategoryInstance::new(Category::product(first.category().clone(), second.category().clone()), bound);
    let sk_lower = bi_skeleton(x, n - 1)?;
    let sk_upper = bi_skeleton(x, n)?;
    let lower = rebind(&sk_lower.0, bound)?;
    let upper = rebind(&sk_upper.0, bound)?;

    let mut pieces = Vec::new();
    for (lat, rep, rep_complex, bdry, bdry_incl) in &pieces_raw {
        let box_ = |k: &CellComplex, l: &CellComplex| -> Result<Arc<CellComplex>> {
            rebind(&external_product(k, l)?, bound)
        };
        let lat_bdry = box_(&lat.complex, bdry)?;
        let lat_rep = box_(&lat.complex, rep_complex)?;
        let xa_bdry = box_(&lat.curried.complex, bdry)?;
        let xa_rep = box_(&lat.curried.complex, rep_complex)?;
        let id_lat = ComplexMap::identity(lat.complex.clone());
        let id_xa = ComplexMap::identity(lat.curried.complex.clone());
        let f = external_product_map(&id_lat, bdry_incl, lat_bdry.clone(), lat_rep.clone())?;
        let g = external_product_map(&lat.comparison, &ComplexMap::identity(bdry.clone()), lat_bdry.clone(), xa_bdry.clone())?;
        let corner = pushout(&f, &g)?;
        // left leg: the corner into Xₐ ⊠ ⟦a⟧
        let h = external_product_map(&lat.comparison, &ComplexMap::identity(rep_complex.clone()), lat_rep.clone(), xa_rep.clone())?;
        let k = external_product_map(&id_xa, bdry_incl, xa_bdry.clone(), xa_rep.clone())?;
        let left = corner.mediate(&h, &k)?;

        // (x, h) ↦ x·(id, h) on Xₐ ⊠ ⟦a⟧
        let width = rep_complex.len();
        let on_xa_rep: Vec<Element> = (0..xa_rep.len())
            .map(|cell| {
                let (xi, hi) = (cell / width, cell % width);
                let e = lat.curried.to_bi(&Element::cell(xi, &lat.curried.complex.cells()[xi].shape));
                let c = lat.curried.complex.cells()[xi].shape.clone();
                x.act_unchecked(&e, &Morphism::pair(Morphism::identity(&c), rep.arrows[hi].clone()))
            })
            .collect();
        let bottom_part =
            on_xa_rep.iter().map(|e| restrict(&sk_upper.1, e)).collect::<Result<Vec<_>>>()?;
        let bottom = ComplexMap::new(xa_rep.clone(), upper.clone(), bottom_part)?;

        // top leg, on both summands of the corner
        let to_lower = |e: &Element| restrict(&sk_lower.1, e);
        let lat_width = rep_complex.len();
        let top_on_lat = (0..lat_rep.len())
            .map(|cell| {
                let (li, hi) = (cell / lat_width, cell % lat_width);
                let (i, e) = lat.origin(li);
                let c = e.shape().first().unwrap().clone();
                let arrow = compose_unchecked(&lat.diagram[*i], &rep.arrows[hi]);
                to_lower(&x.act_unchecked(e, &Morphism::pair(Morphism::identity(&c), arrow)))
            })
            .collect::<Result<Vec<_>>>()?;
        let bdry_width = bdry.len();
        let top_on_xa = (0..xa_bdry.len())
            .map(|cell| {
                let (xi, bi) = (cell / bdry_width, cell % bdry_width);
                let hi = bdry_incl.images()[bi].cell;
                to_lower(&on_xa_rep[xi * width + hi])
            })
            .collect::<Result<Vec<_>>>()?;
        let top_h = ComplexMap::new(lat_rep.clone(), lower.clone(), top_on_lat)?;
        let top_k = ComplexMap::new(xa_bdry.clone(), lower.clone(), top_on_xa)?;
        let top = corner.mediate(&top_h, &top_k)?;

        pieces.push(Piece { corner: corner.complex.clone(), cell: xa_rep, left, top, bottom });
    }

    let corners: Vec<Arc<CellComplex>> = pieces.iter().map(|p| p.corner.clone()).collect();
    let cells: Vec<Arc<CellComplex>> = pieces.iter().map(|p| p.cell.clone()).collect();
    let tl = coproduct(&product_instance, &corners)?;
    let bl = coproduct(&product_instance, &cells)?;
    let lefts: Vec<ComplexMap> = pieces.iter().map(|p| p.left.clone()).collect();
    let tops: Vec<ComplexMap> = pieces.iter().map(|p| p.top.clone()).collect();
    let bottoms: Vec<ComplexMap> = pieces.iter().map(|p| p.bottom.clone()).collect();
    let left = tl.sum_map(&bl, &lefts)?;
    let top = tl.copair(lower.clone(), &tops)?;
    let bottom = bl.copair(upper.clone(), &bottoms)?;
    let right_images = sk_lower
        .1
        .images()
        .iter()
        .map(|e| restrict(&sk_upper.1, e))
        .collect::<Result<Vec<_>>>()?;
    let right = ComplexMap::new(lower, upper, right_images)?;
    let square = Square { top, left, right, bottom };
    let verdict = is_pushout(&square)?;
    Ok(EzSquare { square, is_pushout: verdict, index })
}
