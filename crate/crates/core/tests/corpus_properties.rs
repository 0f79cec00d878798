use std::sync::Arc;

use ezdiag::bipresheaf::external_product;
use ezdiag::corpus::{builtin, Generator};
use ezdiag::homotopy::{cell_euler_characteristic, chain_complex, chain_map, collapse, homology, Matrix};
use ezdiag::presheaf::{pushout, CellComplex, Element};
use ezdiag::text::{parse_complex, write_complex};
use ezdiag::CategoryInstance;

fn corpus(instance: &CategoryInstance, seed: u64, samples: usize) -> Vec<Arc<CellComplex>> {
    let mut out: Vec<_> = builtin(instance).unwrap().into_iter().map(|(_, k)| k).collect();
    let mut g = Generator::new(seed);
    out.extend((0..samples).map(|_| g.complex(instance).unwrap()));
    out
}

fn bases() -> [CategoryInstance; 3] {
    [CategoryInstance::simplex(2), CategoryInstance::box_minimal(2), CategoryInstance::box_connections(2)]
}

#[test]
fn boundary_squares_to_zero_and_euler_matches() {
    for instance in bases() {
        for k in corpus(&instance, 5, 15) {
            let chains = chain_complex::<i64>(&k).unwrap();
            for n in 1..chains.differentials.len() {
                let dd = chains.differentials[n - 1].mul(&chains.differentials[n]);
                assert!(dd.is_zero() || dd.rows == 0);
            }
            let h = homology(&k).unwrap();
            assert_eq!(h.euler_characteristic(), cell_euler_characteristic(&k), "{:?}", k.census());
            if !k.is_empty() {
                assert!(h.degrees[0].rank >= 1);
            }
        }
    }
}

#[test]
fn homology_ignores_names() {
    for instance in bases() {
        for k in corpus(&instance, 6, 10) {
            let renamed = k.renamed(|n| format!("r.{n}"));
            assert_eq!(homology(&k).unwrap(), homology(&renamed).unwrap());
        }
    }
}

#[test]
fn text_round_trip_is_identical() {
    for instance in bases() {
        for k in corpus(&instance, 7, 10) {
            let again = parse_complex(&write_complex(&k)).unwrap();
            assert_eq!(again, *k);
            assert_eq!(write_complex(&again), write_complex(&k));
        }
    }
}

#[test]
fn chain_maps_compose() {
    for instance in bases() {
        for k in corpus(&instance, 8, 10).into_iter().filter(|k| !k.is_empty()) {
            let top = (0..k.len()).max_by_key(|&y| k.cells()[y].shape.degree()).unwrap();
            let f = k.yoneda(&Element::cell(top, &k.cells()[top].shape)).unwrap();
            let g = collapse(&k).unwrap();
            let gf = g.after(&f).unwrap();
            let (cf, cg, cgf) = (chain_map::<i64>(&f).unwrap(), chain_map::<i64>(&g).unwrap(), chain_map::<i64>(&gf).unwrap());
            for n in 0..cgf.len() {
                let composite = if n < cg.len() { cg[n].mul(&cf[n]) } else { Matrix::zeros(0, cf[n].cols) };
                assert_eq!(composite, cgf[n]);
            }
        }
    }
}

#[test]
fn external_products_multiply_levelwise() {
    let d = CategoryInstance::simplex(1);
    let product = CategoryInstance::product(&d, &d);
    let ks = corpus(&d, 9, 4);
    for k in &ks {
        for l in &ks {
            let x = external_product(k, l).unwrap();
            for c in product.objects() {
                let (a, b) = (c.first().unwrap(), c.second().unwrap());
                assert_eq!(x.evaluate(&c).len(), k.evaluate(a).len() * l.evaluate(b).len());
            }
        }
    }
}

#[test]
fn pushout_cocones_are_jointly_surjective() {
    let mut g = Generator::new(10);
    for instance in bases() {
        for _ in 0..10 {
            let b = g.complex(&instance).unwrap();
            let c = g.complex(&instance).unwrap();
            let (Some(u), Some(v)) = (first_vertex(&b), first_vertex(&c)) else { continue };
            let p = pushout(&b.yoneda(&u).unwrap(), &c.yoneda(&v).unwrap()).unwrap();
            p.complex.check_functoriality().unwrap();
            let mut hit = vec![false; p.complex.len()];
            for e in p.left.images().iter().chain(p.right.images()) {
                if e.sigma.is_identity() {
                    hit[e.cell] = true;
                }
            }
            assert!(hit.iter().all(|&h| h));
            let id = ezdiag::ComplexMap::identity(p.complex.clone());
            let u = p.mediate(&p.left, &p.right).unwrap();
            assert_eq!(u.images(), id.images());
        }
    }
}

fn first_vertex(k: &CellComplex) -> Option<Element> {
    (0..k.len()).find(|&y| k.cells()[y].shape.degree() == 0).map(|y| Element::cell(y, &k.cells()[y].shape))
}
