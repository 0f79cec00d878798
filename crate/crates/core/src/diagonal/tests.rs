use std::sync::Arc;

use super::*;
use crate::bipresheaf::external_product_map;
use crate::presheaf::{coproduct, is_isomorphic, is_pushout, pushout, representable, Square};

fn rep(instance: &CategoryInstance, a: Object) -> Arc<CellComplex> {
    Arc::new(representable(instance, &a).unwrap())
}

fn boxed(k: &CellComplex, l: &CellComplex) -> Arc<BiComplex> {
    Arc::new(external_product(k, l).unwrap())
}

fn sx(m: u32) -> Object {
    Object::Simplex(m)
}

fn cube(n: u32) -> Object {
    Object::Cube(n)
}

/// Images of the cells of a complex under the map to the point.
fn collapse_images(k: &CellComplex) -> Vec<Element> {
    k.cells()
        .iter()
        .map(|c| {
            let degree = c.shape.degree();
            Element { sigma: Morphism::Simplex { cod: 0, values: vec![0; degree as usize + 1] }, cell: 0 }
        })
        .collect()
}

fn iso(a: &CellComplex, b: &CellComplex) -> bool {
    is_isomorphic(&Arc::new(a.clone()), &Arc::new(b.clone())).unwrap()
}

/// Non-degenerate simplices of Δ¹ × Δ¹ in degree k: pairs of monotone maps
/// [k] → [1] whose joint values never repeat at consecutive positions.
fn prism_census() -> Vec<usize> {
    (0..=3u32)
        .map(|k| {
            let maps: Vec<Vec<u32>> = (0..=k + 1).map(|j| (0..=k).map(|i| u32::from(i >= j)).collect()).collect();
            let mut count = 0;
            for f in &maps {
                for g in &maps {
                    if (0..k as usize).all(|i| f[i] != f[i + 1] || g[i] != g[i + 1]) {
                        count += 1;
                    }
                }
            }
            count
        })
        .take_while(|&c| c > 0)
        .collect()
}

#[test]
fn categorical_diagonal_of_representable() {
    let d = CategoryInstance::simplex(1);
    let x = rep(&CategoryInstance::product(&d, &d), Object::pair(sx(1), sx(1)));
    let diag = diagonal_categorical(&x).unwrap();
    assert_eq!(diag.census(), vec![4, 5, 2]);
    assert_eq!(diag.census(), prism_census());
    let empty = Arc::new(CellComplex::empty(x.instance().clone()));
    assert!(diagonal_categorical(&empty).unwrap().is_empty());
}

#[test]
fn categorical_diagonal_sizes_multiply() {
    let d = CategoryInstance::simplex(2);
    let k = rep(&d, sx(1));
    let l = rep(&d, sx(2));
    let diag = diagonal_categorical(&boxed(&k, &l)).unwrap();
    for a in diag.instance().objects() {
        assert_eq!(diag.evaluate(&a).len(), k.evaluate(&a).len() * l.evaluate(&a).len());
    }
    assert!(iso(&diag, &categorical_product(&k, &l).unwrap()));
}

#[test]
fn day_diagonal_of_representables() {
    let d = CategoryInstance::simplex(1);
    let b = CategoryInstance::box_minimal(1);
    let c = CategoryInstance::box_connections(1);
    for (base, p) in [
        (&d, PromonoidalStructure::Join),
        (&b, PromonoidalStructure::Geometric),
        (&c, PromonoidalStructure::Geometric),
        (&d, PromonoidalStructure::CategoricalProduct),
        (&b, PromonoidalStructure::CategoricalProduct),
    ] {
        let product = CategoryInstance::product(base, base);
        for a in base.objects() {
            for a2 in base.objects() {
                let x = rep(&product, Object::pair(a.clone(), a2.clone()));
                let diag = day_diagonal(&x, p).unwrap();
                let value = p.value(base, &a, &a2).unwrap();
                assert!(iso(&diag, &value), "{p}: ({a},{a2})");
            }
        }
    }
}

#[test]
fn worked_examples() {
    let d = CategoryInstance::simplex(1);
    let point = rep(&d, sx(0));
    let join = tensor(&point, &point, PromonoidalStructure::Join).unwrap();
    assert!(iso(&join, &rep(&d.with_bound(1), sx(1))));

    let b = CategoryInstance::box_minimal(1);
    let interval = rep(&b, cube(1));
    let square = tensor(&interval, &interval, PromonoidalStructure::Geometric).unwrap();
    assert!(iso(&square, &rep(&b.with_bound(2), cube(2))));

    let edge = rep(&d, sx(1));
    let triangle = tensor(&edge, &point, PromonoidalStructure::Join).unwrap();
    assert_eq!(triangle.census(), vec![3, 3, 1]);
    let product = tensor(&edge, &point, PromonoidalStructure::CategoricalProduct).unwrap();
    assert!(iso(&product, &edge.rebound(2).unwrap()));
}

#[test]
fn join_and_geometric_on_representables() {
    let d = CategoryInstance::simplex(2);
    let b = CategoryInstance::box_connections(2);
    for m in 0..=2u32 {
        for n in 0..=2u32 {
            if m + n + 1 <= 3 {
                let j = tensor(&rep(&d, sx(m)), &rep(&d, sx(n)), PromonoidalStructure::Join).unwrap();
                assert!(iso(&j, &rep(&d.with_bound(5), sx(m + n + 1)).rebound(j.instance().bound()).unwrap()));
            }
            if m + n <= 3 {
                let g = tensor(&rep(&b, cube(m)), &rep(&b, cube(n)), PromonoidalStructure::Geometric).unwrap();
                assert!(iso(&g, &rep(&b.with_bound(4), cube(m + n))));
            }
        }
    }
}

#[test]
fn geometric_product_is_unital_and_associative() {
    let b = CategoryInstance::box_minimal(1);
    let unit = rep(&b, cube(0));
    let interval = rep(&b, cube(1));
    let g = PromonoidalStructure::Geometric;
    assert!(iso(&tensor(&unit, &interval, g).unwrap(), &interval.rebound(1).unwrap()));
    assert!(iso(&tensor(&interval, &unit, g).unwrap(), &interval.rebound(1).unwrap()));
    let left = tensor(&tensor(&interval, &interval, g).unwrap(), &interval, g).unwrap();
    let right = tensor(&interval, &tensor(&interval, &interval, g).unwrap(), g).unwrap();
    assert!(iso(&left, &right));
}

#[test]
fn bound_and_base_errors() {
    let d = CategoryInstance::simplex(1);
    let x = rep(&CategoryInstance::product(&d, &d), Object::pair(sx(1), sx(1)));
    assert!(matches!(
        diagonal_with_bound(&x, DiagonalMode::Day(PromonoidalStructure::Join), 2),
        Err(Error::InsufficientBound { required: 3, available: 2 })
    ));
    assert!(matches!(day_diagonal(&x, PromonoidalStructure::Geometric), Err(Error::UnsupportedBase(_))));
    let flat = rep(&d, sx(1));
    assert!(matches!(diagonal_categorical(&flat), Err(Error::UnsupportedBase(_))));
}

#[test]
fn induced_maps_are_functorial() {
    let d = CategoryInstance::simplex(1);
    let point = rep(&d, sx(0));
    let edge = rep(&d, sx(1));
    let x = boxed(&edge, &edge);
    let y = boxed(&point, &edge);
    let collapse = ComplexMap::new(edge.clone(), point.clone(), collapse_images(&edge)).unwrap();
    let id_edge = ComplexMap::identity(edge.clone());
    let f = external_product_map(&collapse, &id_edge, x.clone(), y.clone()).unwrap();

    for mode in [
        DiagonalMode::Categorical,
        DiagonalMode::Day(PromonoidalStructure::Join),
        DiagonalMode::Day(PromonoidalStructure::CategoricalProduct),
    ] {
        let (_, _, id) = induced_map(&ComplexMap::identity(x.clone()), mode).unwrap();
        assert!(id.is_identity(), "{mode}");
        let (_, _, df) = induced_map(&f, mode).unwrap();
        let g = ComplexMap::identity(y.clone());
        let (_, _, dg) = induced_map(&g, mode).unwrap();
        let (_, _, dgf) = induced_map(&g.after(&f).unwrap(), mode).unwrap();
        assert_eq!(dg.after(&df).unwrap().images(), dgf.images());
    }

    // the collapse of the first factor is the projection Δ¹ × Δ¹ → Δ¹:
    // onto, with every fibre at level c a copy of (Δ¹)_c
    let (dx, dy, df) = induced_map(&f, DiagonalMode::Categorical).unwrap();
    assert!(iso(&dy.complex, &edge));
    for c in dx.complex.instance().objects() {
        let mut fibres: std::collections::HashMap<Element, usize> = std::collections::HashMap::new();
        for e in dx.complex.evaluate(&c) {
            *fibres.entry(df.apply(&e).unwrap()).or_default() += 1;
        }
        assert_eq!(fibres.len(), dy.complex.evaluate(&c).len());
        assert!(fibres.values().all(|&n| n == edge.evaluate(&c).len()));
    }
}

#[test]
fn day_diagonal_preserves_pushouts_and_coproducts() {
    let d = CategoryInstance::simplex(1);
    let point = rep(&d, sx(0));
    let edge = rep(&d, sx(1));
    let product = CategoryInstance::product(&d, &d);
    // glue two copies of Δ¹ ⊠ Δ⁰ along a vertex
    let x = boxed(&edge, &point);
    let s = boxed(&point, &point);
    let v = |i: usize| {
        let e = Element::cell(i, &sx(0));
        let left = ComplexMap::new(point.clone(), edge.clone(), vec![e]).unwrap();
        external_product_map(&left, &ComplexMap::identity(point.clone()), s.clone(), x.clone()).unwrap()
    };
    let p = pushout(&v(1), &v(0)).unwrap();
    for structure in [PromonoidalStructure::Join, PromonoidalStructure::CategoricalProduct] {
        let mode = DiagonalMode::Day(structure);
        let (_, _, top) = induced_map(&v(1), mode).unwrap();
        let (_, _, left) = induced_map(&v(0), mode).unwrap();
        let (_, _, right) = induced_map(&p.left, mode).unwrap();
        let (_, _, bottom) = induced_map(&p.right, mode).unwrap();
        let square = Square {
            top: top.clone(),
            left: left.retarget(left.source().clone(), left.target().clone()),
            right: right.retarget(top.target().clone(), right.target().clone()),
            bottom: bottom.retarget(left.target().clone(), right.target().clone()),
        };
        assert!(is_pushout(&square).unwrap(), "{structure}");

        let sum = coproduct(&product, &[x.clone(), x.clone()]).unwrap();
        let diag_sum = day_diagonal(&sum.complex, structure).unwrap();
        let single = Arc::new(day_diagonal(&x, structure).unwrap());
        let instance = single.instance().clone();
        let expected = coproduct(&instance, &[single.clone(), single]).unwrap().complex;
        assert!(iso(&diag_sum, &expected));
    }
}
