//! Explicit level-by-level presheaves and the colimit engine.
//!
//! A [`LevelTable`] lists the elements of a presheaf at every object up to
//! the degree bound as integer indices, with the action of each non-identity
//! arrow of `A+` and `A-` between those objects. Colimits are computed on
//! tables by union-find and turned back into cellular form by
//! [`LevelTable::extract`].

use std::collections::HashMap;

use crate::category::{CategoryInstance, Morphism, Object};
use crate::error::{Error, Result};

use super::{Cell, CellComplex, CellId, Element};

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        Self { parent: (0..len).collect() }
    }

    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut j = i;
        while self.parent[j] != root {
            let next = self.parent[j];
            self.parent[j] = root;
            j = next;
        }
        root
    }

    /// Merge, keeping the smaller root so class representatives are the
    /// first members in index order.
    pub fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }

    /// Class index of every member, numbering classes by their least member.
    pub fn classes(&mut self) -> (Vec<usize>, Vec<usize>) {
        let n = self.parent.len();
        let mut class_of = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for i in 0..n {
            let r = self.find(i);
            if class_of[r] == usize::MAX {
                class_of[r] = representatives.len();
                representatives.push(r);
            }
            class_of[i] = class_of[r];
        }
        (class_of, representatives)
    }
}

pub(crate) struct LevelTable {
    pub instance: CategoryInstance,
    pub objects: Vec<Object>,
    pub index: HashMap<Object, usize>,
    pub sizes: Vec<usize>,
    /// For `φ: c → b`, the function from elements at `b` to elements at `c`.
    pub action: HashMap<Morphism, Vec<usize>>,
}

/// The non-identity arrows whose action a table records, with their
/// codomain level: `A+` arrows into each object and `A-` arrows out of it.
fn tracked_arrows(instance: &CategoryInstance, objects: &[Object]) -> Vec<Morphism> {
    let category = instance.category();
    let mut out = Vec::new();
    for b in objects {
        out.extend(category.plus_into(b).iter().filter(|f| !f.is_identity()).cloned());
        out.extend(category.minus_from(b).iter().filter(|f| !f.is_identity()).cloned());
    }
    out
}

impl LevelTable {
    pub fn build(
        instance: &CategoryInstance,
        mut size: impl FnMut(usize, &Object) -> usize,
        mut act: impl FnMut(&Morphism, usize) -> usize,
    ) -> Self {
        let objects = instance.objects();
        let index: HashMap<Object, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let sizes: Vec<usize> = objects.iter().enumerate().map(|(i, o)| size(i, o)).collect();
        let mut action = HashMap::new();
        for phi in tracked_arrows(instance, &objects) {
            let b = index[&phi.codomain()];
            let table: Vec<usize> = (0..sizes[b]).map(|x| act(&phi, x)).collect();
            action.insert(phi, table);
        }
        Self { instance: instance.clone(), objects, index, sizes, action }
    }

    pub fn level(&self, object: &Object) -> usize {
        self.index[object]
    }

    /// Apply a non-identity tracked arrow or an identity.
    pub fn apply(&self, phi: &Morphism, x: usize) -> usize {
        if phi.is_identity() {
            return x;
        }
        self.action[phi][x]
    }

    /// The quotient by a levelwise equivalence compatible with the action.
    /// Returns the quotient table and, per level, the class of each element.
    pub fn quotient(&self, mut relate: impl FnMut(usize, &mut UnionFind)) -> (LevelTable, Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut class_of = Vec::with_capacity(self.objects.len());
        let mut reps = Vec::with_capacity(self.objects.len());
        for (level, &n) in self.sizes.iter().enumerate() {
            let mut uf = UnionFind::new(n);
            relate(level, &mut uf);
            let (c, r) = uf.classes();
            class_of.push(c);
            reps.push(r);
        }
        let mut action = HashMap::new();
        for (phi, table) in &self.action {
            let b = self.index[&phi.codomain()];
            let c = self.index[&phi.domain()];
            let quotient: Vec<usize> = reps[b].iter().map(|&r| class_of[c][table[r]]).collect();
            action.insert(phi.clone(), quotient);
        }
        let sizes = reps.iter().map(Vec::len).collect();
        let table = LevelTable {
            instance: self.instance.clone(),
            objects: self.objects.clone(),
            index: self.index.clone(),
            sizes,
            action,
        };
        (table, class_of, reps)
    }

    /// Recover the cellular form: non-degenerate elements become cells and
    /// each element gets its normal form `(σ, cell)`.
    pub fn extract(&self, mut name: impl FnMut(usize, usize) -> String) -> Result<Extraction> {
        let category = self.instance.category().clone();
        let mut order: Vec<usize> = (0..self.objects.len()).collect();
        order.sort_by_key(|&i| self.objects[i].degree());

        let mut normal: Vec<Vec<Option<Element>>> = self.sizes.iter().map(|&n| vec![None; n]).collect();
        let mut cells: Vec<Cell> = Vec::new();
        let mut origin: Vec<(usize, usize)> = Vec::new();
        let mut cells_at: Vec<Vec<(usize, CellId)>> = vec![Vec::new(); self.objects.len()];
        let mut used_names: HashMap<String, usize> = HashMap::new();

        for &level in &order {
            let a = &self.objects[level];
            for sigma in category.minus_from(a).iter().filter(|s| !s.is_identity()) {
                let b = self.index[&sigma.codomain()];
                for &(y_elem, y) in &cells_at[b] {
                    let x = self.action[sigma][y_elem];
                    if let Some(previous) = &normal[level][x] {
                        return Err(Error::InvalidComplex(format!(
                            "element {x} at {a} has two normal forms ({} and {sigma}); not an EZ presheaf",
                            previous.sigma
                        )));
                    }
                    normal[level][x] = Some(Element { sigma: sigma.clone(), cell: y });
                }
            }
            for x in 0..self.sizes[level] {
                if normal[level][x].is_none() {
                    let y = cells.len();
                    let mut base = name(level, x);
                    if let Some(k) = used_names.get_mut(&base) {
                        *k += 1;
                        base = format!("{base}'{k}");
                    } else {
                        used_names.insert(base.clone(), 0);
                    }
                    cells.push(Cell { name: base, shape: a.clone() });
                    origin.push((level, x));
                    cells_at[level].push((x, y));
                    normal[level][x] = Some(Element::cell(y, a));
                }
            }
        }

        let normal: Vec<Vec<Element>> =
            normal.into_iter().map(|v| v.into_iter().map(|e| e.expect("every element classified")).collect()).collect();

        let mut faces = Vec::with_capacity(cells.len());
        for &(level, x) in &origin {
            let mut table = HashMap::new();
            for phi in category.plus_into(&self.objects[level]).iter().filter(|f| !f.is_identity()) {
                let c = self.index[&phi.domain()];
                table.insert(phi.clone(), normal[c][self.action[phi][x]].clone());
            }
            faces.push(table);
        }
        let complex = CellComplex::assemble(self.instance.clone(), cells, faces);
        Ok(Extraction { complex, normal, origin })
    }
}

pub(crate) struct Extraction {
    pub complex: CellComplex,
    /// Normal form of every element, per level.
    pub normal: Vec<Vec<Element>>,
    /// Level and element index each cell came from.
    pub origin: Vec<(usize, usize)>,
}

/// A cellular complex listed level by level.
pub(crate) struct Evaluated {
    pub table: LevelTable,
    pub elements: Vec<Vec<Element>>,
    pub lookup: Vec<HashMap<Element, usize>>,
}

impl Evaluated {
    /// Levels are those of `instance`, which may exceed the complex's own bound.
    pub fn with_instance(complex: &CellComplex, instance: &CategoryInstance) -> Self {
        let objects = instance.objects();
        let elements: Vec<Vec<Element>> = objects.iter().map(|a| complex.evaluate(a)).collect();
        let lookup: Vec<HashMap<Element, usize>> = elements
            .iter()
            .map(|v| v.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect())
            .collect();
        let index: HashMap<Object, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let table = LevelTable::build(
            instance,
            |i, _| elements[i].len(),
            |phi, x| {
                let b = index[&phi.codomain()];
                let c = index[&phi.domain()];
                let image = complex.act_unchecked(&elements[b][x], phi);
                lookup[c][&image]
            },
        );
        Self { table, elements, lookup }
    }

    pub fn position(&self, x: &Element) -> (usize, usize) {
        let level = self.table.level(&x.shape());
        (level, self.lookup[level][x])
    }
}
