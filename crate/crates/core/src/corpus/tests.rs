use super::*;
use crate::bipresheaf::curry_map;
use crate::homotopy::{homology, is_homology_equivalence};
use crate::text::{parse_complex, write_complex};

#[test]
fn generator_is_deterministic() {
    let d = CategoryInstance::simplex(2);
    let a: Vec<_> = (0..5).map({
        let mut g = Generator::new(7);
        move |_| g.complex(&d).unwrap()
    }).collect();
    let mut g = Generator::new(7);
    for k in &a {
        assert_eq!(**k, *g.complex(&CategoryInstance::simplex(2)).unwrap());
    }
}

#[test]
fn random_complexes_are_presheaves() {
    let mut g = Generator::new(1);
    for instance in [CategoryInstance::simplex(2), CategoryInstance::box_minimal(2), CategoryInstance::box_connections(2)] {
        for _ in 0..10 {
            let k = g.complex(&instance).unwrap();
            k.check_functoriality().unwrap();
            assert_eq!(parse_complex(&write_complex(&k)).unwrap(), *k);
        }
    }
}

#[test]
fn gluing_interval_ends_makes_a_circle() {
    let d = CategoryInstance::simplex(1);
    let edge = Arc::new(representable(&d, &Object::Simplex(1)).unwrap());
    let (v0, v1) = (edge.cell_by_name("[0]").unwrap(), edge.cell_by_name("[1]").unwrap());
    let circle = glue(&edge, v0, v1).unwrap();
    assert_eq!(circle.census(), vec![1, 1]);
    assert_eq!(homology(&circle).unwrap().ranks(), vec![1, 1]);
}

#[test]
fn collapsing_the_interval_gives_a_point() {
    let d = CategoryInstance::simplex(1);
    let edge = Arc::new(representable(&d, &Object::Simplex(1)).unwrap());
    let top = edge.cells_of_shape(&Object::Simplex(1))[0];
    assert_eq!(collapse_cell(&edge, top, 0).unwrap().census(), vec![1]);
}

#[test]
fn random_bicomplexes_are_presheaves() {
    let mut g = Generator::new(2);
    let d = CategoryInstance::simplex(1);
    for _ in 0..5 {
        let x = g.bicomplex(&d, &d).unwrap();
        x.check_functoriality().unwrap();
    }
}

#[test]
fn equivalences_are_levelwise() {
    let mut g = Generator::new(3);
    for instance in [CategoryInstance::simplex(2), CategoryInstance::box_minimal(2)] {
        let levels = instance.objects();
        for _ in 0..6 {
            let (name, f) = g.equivalence(&instance).unwrap();
            f.check_naturality().unwrap();
            for a in &levels {
                let (_, _, fa) = curry_map(&f, a).unwrap();
                assert!(is_homology_equivalence(&fa).unwrap(), "{name} at {a}");
            }
        }
    }
}

#[test]
fn examples_cover_the_three_bases() {
    let names: Vec<String> = examples().unwrap().into_iter().map(|(n, _)| n).collect();
    for expected in ["simplex-rep-2", "box-min-boundary-2", "box-min-square-product", "box-conn-empty"] {
        assert!(names.iter().any(|n| n == expected), "{expected}");
    }
}
