use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use super::*;
use crate::category::{CategoryInstance, Object};
use crate::diagonal::categorical_product;
use crate::presheaf::{boundary, coproduct, representable};

fn rep(instance: &CategoryInstance, a: Object) -> Arc<CellComplex> {
    Arc::new(representable(instance, &a).unwrap())
}

fn int(rows: &[&[i64]]) -> Matrix<i64> {
    Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
}

/// Determinant by cofactor expansion.
fn det(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Invariant factors from determinantal divisors: dₖ = gcd of k×k minors,
/// factor k is dₖ / dₖ₋₁.
fn factors_by_minors(m: &Matrix<i64>) -> Vec<i64> {
    let mut out = Vec::new();
    let mut previous = 1;
    for k in 1..=m.rows.min(m.cols) {
        let mut g = 0i64;
        for rows in subsets(m.rows, k) {
            for cols in subsets(m.cols, k) {
                let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| *m.get(i, j)).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / previous);
        previous = g;
    }
    out
}

#[test]
fn snf_examples() {
    assert!(smith_normal_form(&Matrix::<i64>::zeros(2, 3)).is_empty());
    assert_eq!(smith_normal_form(&int(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), vec![1, 1, 1]);
    assert_eq!(smith_normal_form(&int(&[&[2, 4], &[6, 8]])), vec![2, 4]);
    assert_eq!(smith_normal_form(&int(&[&[2, 0], &[0, 3]])), vec![1, 6]);
    assert_eq!(rank(&int(&[&[1, 2], &[2, 4]])), 1);
    assert_eq!(smith_normal_form(&Matrix::<BigInt>::zeros(0, 4)), Vec::<BigInt>::new());
}

proptest! {
    #[test]
    fn snf_matches_determinantal_divisors(
        rows in 1usize..4,
        cols in 1usize..4,
        entries in prop::collection::vec(-6i64..=6, 16),
    ) {
        let m = Matrix { rows, cols, data: entries[..rows * cols].to_vec() };
        let factors = smith_normal_form(&m);
        prop_assert_eq!(&factors, &factors_by_minors(&m));
        for w in factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        let big = Matrix { rows, cols, data: m.data.iter().map(|&v| BigInt::from(v)).collect() };
        let big_factors: Vec<i64> = smith_normal_form(&big).iter().map(|v| i64::try_from(v).unwrap()).collect();
        prop_assert_eq!(big_factors, factors);
    }
}

#[test]
fn torsion_from_hand_built_complex() {
    // Z --2--> Z has H₀ = Z/2 and nothing else
    let d = vec![Matrix::<i64>::zeros(0, 1), int(&[&[2]])];
    let h = homology_of(&[1, 1], &d);
    assert_eq!(h.degrees[0], DegreeHomology { rank: 0, torsion: vec![2] });
    assert_eq!(h.degrees[1], DegreeHomology { rank: 0, torsion: vec![] });
    assert_eq!(h.to_string(), "H_0 = Z/2\nH_1 = 0\n");
}

#[test]
fn boundary_of_triangle_is_a_circle() {
    let d = CategoryInstance::simplex(3);
    let k = boundary(&d, &Object::Simplex(2)).unwrap();
    let chains = chain_complex::<i64>(&k).unwrap();
    assert_eq!(rank(&chains.differentials[1]), 2);
    let h = homology(&k).unwrap();
    assert_eq!(h.ranks(), vec![1, 1]);
    assert!(h.is_torsion_free());
}

#[test]
fn boundary_of_square_is_a_circle() {
    for instance in [CategoryInstance::box_minimal(2), CategoryInstance::box_connections(2)] {
        let k = boundary(&instance, &Object::Cube(2)).unwrap();
        let chains = chain_complex::<i64>(&k).unwrap();
        assert_eq!(rank(&chains.differentials[1]), 3);
        assert_eq!(homology(&k).unwrap().ranks(), vec![1, 1]);
    }
}

#[test]
fn representables_are_contractible() {
    for instance in [CategoryInstance::simplex(3), CategoryInstance::box_minimal(3), CategoryInstance::box_connections(3)] {
        for a in instance.objects() {
            let k = rep(&instance, a.clone());
            let mut expected = vec![0; a.degree() as usize + 1];
            expected[0] = 1;
            assert_eq!(homology(&k).unwrap().ranks(), expected, "{a}");
            assert!(is_homology_equivalence(&collapse(&k).unwrap()).unwrap());
        }
    }
}

#[test]
fn products_of_intervals() {
    let d = CategoryInstance::simplex(2);
    let e = rep(&d, Object::Simplex(1));
    let prism = Arc::new(categorical_product(&e, &e).unwrap());
    assert_eq!(homology(&prism).unwrap().ranks(), vec![1, 0, 0]);
    assert!(is_homology_equivalence(&collapse(&prism).unwrap()).unwrap());

    // without connections the product of intervals has a square and its
    // transpose glued along their boundary, a sphere with a diagonal
    let b = CategoryInstance::box_minimal(2);
    let i = rep(&b, Object::Cube(1));
    let p = Arc::new(categorical_product(&i, &i).unwrap());
    assert_eq!(p.census(), vec![4, 5, 2]);
    assert_eq!(homology(&p).unwrap().ranks(), vec![1, 1, 1]);
    assert!(!is_homology_equivalence(&collapse(&p).unwrap()).unwrap());
}

#[test]
fn euler_characteristic_agrees_with_census() {
    let d = CategoryInstance::simplex(3);
    let parts = vec![
        Arc::new(boundary(&d, &Object::Simplex(3)).unwrap()),
        rep(&d, Object::Simplex(1)),
        Arc::new(boundary(&d, &Object::Simplex(1)).unwrap()),
    ];
    let sum = coproduct(&d, &parts).unwrap().complex;
    let h = homology(&sum).unwrap();
    assert_eq!(h.ranks(), vec![4, 0, 1]);
    assert_eq!(h.euler_characteristic(), cell_euler_characteristic(&sum));
    assert_eq!(homology_with::<i64>(&sum).unwrap().ranks(), h.ranks());
}

#[test]
fn maps_between_spheres() {
    let d = CategoryInstance::simplex(2);
    let circle = Arc::new(boundary(&d, &Object::Simplex(2)).unwrap());
    assert!(!is_homology_equivalence(&collapse(&circle).unwrap()).unwrap());
    assert!(is_homology_equivalence(&ComplexMap::identity(circle.clone())).unwrap());
    let chains = chain_map::<i64>(&ComplexMap::identity(circle)).unwrap();
    assert_eq!(chains[1], int(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
}

#[test]
fn unsupported_bases() {
    let d = CategoryInstance::simplex(1);
    let product = CategoryInstance::product(&d, &d);
    let k = representable(&product, &Object::pair(Object::Simplex(1), Object::Simplex(0))).unwrap();
    assert!(matches!(homology(&k), Err(Error::UnsupportedBase(_))));
    assert!(!supports_homology(product.category()));
}
