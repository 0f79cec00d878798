use std::sync::Arc;

use super::*;
use crate::category::{Category, CategoryInstance, Morphism, Object};

fn s(cod: u32, values: &[u32]) -> Morphism {
    Morphism::Simplex { cod, values: values.to_vec() }
}

fn delta(bound: u32) -> CategoryInstance {
    CategoryInstance::simplex(bound)
}

fn rep(instance: &CategoryInstance, a: Object) -> Arc<CellComplex> {
    Arc::new(representable(instance, &a).unwrap())
}

fn point_into(target: &Arc<CellComplex>, vertex: CellId) -> ComplexMap {
    target.yoneda(&Element::cell(vertex, &target.cells()[vertex].shape)).unwrap()
}

#[test]
fn representable_census() {
    assert_eq!(rep(&delta(3), Object::Simplex(1)).census(), vec![2, 1]);
    assert_eq!(rep(&delta(3), Object::Simplex(2)).census(), vec![3, 3, 1]);
    assert_eq!(rep(&CategoryInstance::box_minimal(3), Object::Cube(2)).census(), vec![4, 4, 1]);
}

#[test]
fn representable_evaluates_to_hom() {
    for instance in [delta(3), CategoryInstance::box_minimal(3), CategoryInstance::box_connections(3)] {
        for a in instance.objects() {
            let k = rep(&instance, a.clone());
            k.check_functoriality().unwrap();
            for c in instance.objects() {
                assert_eq!(k.evaluate(&c).len(), instance.hom(&c, &a).unwrap().len());
            }
        }
    }
}

#[test]
fn evaluation_examples() {
    let d = delta(3);
    assert_eq!(rep(&d, Object::Simplex(0)).evaluate(&Object::Simplex(1)).len(), 1);
    assert_eq!(rep(&d, Object::Simplex(1)).evaluate(&Object::Simplex(1)).len(), 3);
    assert!(CellComplex::empty(d).evaluate(&Object::Simplex(2)).is_empty());
}

#[test]
fn act_examples() {
    let d = delta(3);
    let k = rep(&d, Object::Simplex(1));
    let top = k.cells_of_shape(&Object::Simplex(1))[0];
    let x = Element::cell(top, &Object::Simplex(1));
    assert_eq!(k.act(&x, &Morphism::identity(&Object::Simplex(1))).unwrap(), x);
    let face = k.act(&x, &s(1, &[1])).unwrap();
    assert_eq!(k.cells()[face.cell].name, "[1]");
    assert!(!face.is_degenerate());
    assert!(matches!(k.act(&x, &s(2, &[0, 1])), Err(Error::DomainMismatch { .. })));
}

#[test]
fn act_is_functorial_on_representables() {
    let d = delta(3);
    let k = rep(&d, Object::Simplex(2));
    let objects = d.objects();
    for a in &objects {
        for x in k.evaluate(a) {
            for b in &objects {
                for phi in d.hom(b, a).unwrap().iter() {
                    let xphi = k.act(&x, phi).unwrap();
                    for c in &objects {
                        for psi in d.hom(c, b).unwrap().iter() {
                            let lhs = k.act(&xphi, psi).unwrap();
                            let rhs = k.act(&x, &crate::category::compose(phi, psi).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn ez_decomposition_is_unique() {
    let d = delta(3);
    let r = Representable::new(&d, &Object::Simplex(2)).unwrap();
    let three = Object::Simplex(3);
    for x in r.complex.evaluate(&three) {
        let phi = r.arrow_of(&x);
        // every (σ ∈ A-, cell y) with y∘σ = φ, searched exhaustively
        let mut found = Vec::new();
        for sigma in d.category().minus_from(&three).iter() {
            for (y, arrow) in r.arrows.iter().enumerate() {
                if arrow.domain() == sigma.codomain() && crate::category::compose(arrow, sigma).unwrap() == phi {
                    found.push((sigma.clone(), y));
                }
            }
        }
        assert_eq!(found, vec![r.complex.ez_decompose(&x).unwrap()]);
    }
    let point = rep(&d, Object::Simplex(0));
    let degenerate = point.evaluate(&Object::Simplex(1)).pop().unwrap();
    assert_eq!(point.ez_decompose(&degenerate).unwrap(), (s(0, &[0, 0]), 0));
}

#[test]
fn skeleta_and_boundaries() {
    let d = delta(3);
    let edge = rep(&d, Object::Simplex(1));
    let (sk0, inclusion) = edge.skeleton(0).unwrap();
    assert_eq!(sk0.census(), vec![2]);
    inclusion.check_naturality().unwrap();
    assert!(edge.skeleton(-1).unwrap().0.is_empty());
    assert_eq!(*edge.skeleton(5).unwrap().0, *edge);

    let square = rep(&CategoryInstance::box_minimal(2), Object::Cube(2));
    assert_eq!(square.skeleton(1).unwrap().0.census(), vec![4, 4]);
    let (sk1, _) = square.skeleton(1).unwrap();
    assert_eq!(*sk1.skeleton(1).unwrap().0, *sk1);

    assert!(boundary(&d, &Object::Simplex(0)).unwrap().is_empty());
    assert_eq!(boundary(&d, &Object::Simplex(2)).unwrap().census(), vec![3, 3]);
    assert_eq!(boundary(&CategoryInstance::box_minimal(2), &Object::Cube(2)).unwrap().census(), vec![4, 4]);
}

#[test]
fn pushout_along_identity() {
    let d = delta(2);
    let c = rep(&d, Object::Simplex(2));
    let id = ComplexMap::identity(c.clone());
    let p = pushout(&id, &id).unwrap();
    assert!(is_isomorphic(&p.complex, &c).unwrap());
}

#[test]
fn coproduct_of_points() {
    let d = delta(2);
    let point = rep(&d, Object::Simplex(0));
    let empty = Arc::new(CellComplex::empty(d.clone()));
    assert!(coproduct(&d, &[]).unwrap().complex.is_empty());

    let to_point = ComplexMap::new(empty.clone(), point.clone(), vec![]).unwrap();
    let p = pushout(&to_point, &to_point).unwrap();
    assert_eq!(p.complex.census(), vec![2]);
    let sum = coproduct(&d, &[point.clone(), point]).unwrap();
    assert!(is_isomorphic(&p.complex, &sum.complex).unwrap());
    assert_eq!(sum.complex.cells()[1].name, "1.[0]");
}

#[test]
fn gluing_two_intervals() {
    let d = delta(3);
    let edge = rep(&d, Object::Simplex(1));
    let v1 = edge.cell_by_name("[1]").unwrap();
    let v0 = edge.cell_by_name("[0]").unwrap();
    let f = point_into(&edge, v1);
    let g = point_into(&edge, v0);
    let p = pushout(&f, &g).unwrap();
    assert_eq!(p.complex.census(), vec![3, 2]);
    p.complex.check_functoriality().unwrap();
    // levelwise count: two copies of Δ([k],[1]) sharing one point
    for k in 0..=3u32 {
        assert_eq!(p.complex.evaluate(&Object::Simplex(k)).len(), 2 * (k as usize + 2) - 1);
    }
    p.left.check_naturality().unwrap();
    p.right.check_naturality().unwrap();
}

#[test]
fn mediating_map_requires_commuting_cocone() {
    let d = delta(2);
    let edge = rep(&d, Object::Simplex(1));
    let f = point_into(&edge, 0);
    let p = pushout(&f, &f).unwrap();
    let id = ComplexMap::identity(edge.clone());
    let u = p.mediate(&id, &id).unwrap();
    assert_eq!(u.after(&p.left).unwrap().images(), id.images());

    let other = point_into(&edge, 1);
    let q = pushout(&f, &other).unwrap();
    assert!(matches!(q.mediate(&id, &id), Err(Error::NotCommuting(_))));
}

#[test]
fn skeletal_square_of_triangle() {
    let k = rep(&delta(2), Object::Simplex(2));
    for n in 0..=2 {
        let square = skeletal_square(&k, n).unwrap();
        assert!(square.commutes().unwrap());
        assert!(is_pushout(&square).unwrap(), "n = {n}");
    }
}

#[test]
fn square_with_extra_point_is_not_pushout() {
    let d = delta(2);
    let k = rep(&d, Object::Simplex(1));
    let mut square = skeletal_square(&k, 1).unwrap();
    let point = rep(&d, Object::Simplex(0));
    let corner = coproduct(&d, &[square.bottom.target().clone(), point]).unwrap();
    let inj = &corner.injections[0];
    square.right = inj.after(&square.right).unwrap();
    square.bottom = inj.after(&square.bottom).unwrap();
    assert!(!is_pushout(&square).unwrap());
}

#[test]
fn coproduct_of_representables_evaluates_to_sum() {
    let d = delta(3);
    let shapes = [Object::Simplex(1), Object::Simplex(2), Object::Simplex(2)];
    let parts: Vec<_> = shapes.iter().map(|a| rep(&d, a.clone())).collect();
    let sum = coproduct(&d, &parts).unwrap();
    for c in d.objects() {
        let expected: usize = shapes.iter().map(|a| d.hom(&c, a).unwrap().len()).sum();
        assert_eq!(sum.complex.evaluate(&c).len(), expected);
    }
}

#[test]
fn isomorphism_examples() {
    let d = delta(2);
    let edge = rep(&d, Object::Simplex(1));
    assert!(is_isomorphic(&edge, &edge).unwrap());
    let point = rep(&d, Object::Simplex(0));
    let two = coproduct(&d, &[point.clone(), point]).unwrap().complex;
    assert!(!is_isomorphic(&edge, &two).unwrap());

    let renamed = Arc::new(edge.renamed(|n| format!("e{n}")));
    let witness = isomorphism(&edge, &renamed).unwrap().unwrap();
    witness.check_naturality().unwrap();
}

#[test]
fn filtration_examples() {
    let d = delta(2);
    let empty = Arc::new(CellComplex::empty(d.clone()));
    assert_eq!(filtration_check(&empty).unwrap(), Filtration { holds: true, stabilizes_at: -1 });
    let k = rep(&d, Object::Simplex(2));
    assert_eq!(filtration_check(&k).unwrap(), Filtration { holds: true, stabilizes_at: 2 });
}

#[test]
fn naturality_is_checked() {
    let d = delta(2);
    let edge = rep(&d, Object::Simplex(1));
    // sending the edge to itself but swapping its endpoints is not natural
    let mut images: Vec<Element> = ComplexMap::identity(edge.clone()).images().to_vec();
    let (v0, v1) = (edge.cell_by_name("[0]").unwrap(), edge.cell_by_name("[1]").unwrap());
    images.swap(v0, v1);
    assert!(ComplexMap::new(edge.clone(), edge.clone(), images).is_err());
}

#[test]
fn products_and_slices_support_cells() {
    let delta1 = delta(1);
    let product = CategoryInstance::product(&delta1, &delta1);
    let a = Object::pair(Object::Simplex(1), Object::Simplex(1));
    let k = rep(&product, a.clone());
    assert_eq!(k.census(), vec![4, 4, 1]);
    k.check_functoriality().unwrap();

    let slice = CategoryInstance::new(Category::Slice(Box::new(Category::Simplex), Object::Simplex(0)), 2);
    for b in slice.objects() {
        rep(&slice, b).check_functoriality().unwrap();
    }
}
