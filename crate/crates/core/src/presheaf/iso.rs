use std::sync::Arc;

use crate::error::Result;

use super::{colimit::common_instance, CellComplex, CellId, ComplexMap, Element};

/// A search state: the partial cell bijection in both directions.
#[derive(Clone)]
struct Assignment {
    forward: Vec<Option<CellId>>,
    backward: Vec<Option<CellId>>,
}

impl Assignment {
    /// Send `y ↦ w` and everything the face tables force. `false` on conflict.
    fn assign(&mut self, k: &CellComplex, l: &CellComplex, y: CellId, w: CellId) -> bool {
        let mut stack = vec![(y, w)];
        while let Some((y, w)) = stack.pop() {
            match (self.forward[y], self.backward[w]) {
                (Some(a), _) if a != w => return false,
                (_, Some(b)) if b != y => return false,
                (Some(_), _) => continue,
                _ => {}
            }
            if k.cells()[y].shape != l.cells()[w].shape {
                return false;
            }
            self.forward[y] = Some(w);
            self.backward[w] = Some(y);
            for (phi, face) in k.face_table(y) {
                let image = l.face(w, phi);
                if image.sigma != face.sigma {
                    return false;
                }
                stack.push((face.cell, image.cell));
            }
        }
        true
    }
}

fn search(k: &CellComplex, l: &CellComplex, order: &[CellId], state: Assignment) -> Option<Assignment> {
    let Some(pos) = order.iter().position(|&y| state.forward[y].is_none()) else {
        return Some(state);
    };
    let y = order[pos];
    for &w in l.cells_of_shape(&k.cells()[y].shape) {
        if state.backward[w].is_some() {
            continue;
        }
        let mut next = state.clone();
        if next.assign(k, l, y, w) {
            if let Some(done) = search(k, l, &order[pos..], next) {
                return Some(done);
            }
        }
    }
    None
}

/// An isomorphism `K → L` if one exists, found by assigning top cells first
/// and propagating through faces.
pub fn isomorphism(k: &Arc<CellComplex>, l: &Arc<CellComplex>) -> Result<Option<ComplexMap>> {
    common_instance(k, l)?;
    if k.census() != l.census() {
        return Ok(None);
    }
    let mut shapes_k: Vec<_> = k.cells().iter().map(|c| c.shape.clone()).collect();
    let mut shapes_l: Vec<_> = l.cells().iter().map(|c| c.shape.clone()).collect();
    shapes_k.sort();
    shapes_l.sort();
    if shapes_k != shapes_l {
        return Ok(None);
    }
    let mut order: Vec<CellId> = (0..k.len()).collect();
    order.sort_by_key(|&y| std::cmp::Reverse(k.cells()[y].shape.degree()));
    let start = Assignment { forward: vec![None; k.len()], backward: vec![None; l.len()] };
    let Some(found) = search(k, l, &order, start) else {
        return Ok(None);
    };
    let images = found
        .forward
        .iter()
        .enumerate()
        .map(|(y, w)| Element::cell(w.expect("complete assignment"), &k.cells()[y].shape))
        .collect();
    Ok(Some(ComplexMap::new(k.clone(), l.clone(), images)?))
}

pub fn is_isomorphic(k: &Arc<CellComplex>, l: &Arc<CellComplex>) -> Result<bool> {
    Ok(isomorphism(k, l)?.is_some())
}
