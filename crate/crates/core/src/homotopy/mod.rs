//! Integral homology of simplicial and cubical complexes through normalized
//! chains, and homology equivalences as the computable stand-in for weak
//! equivalences.

mod snf;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::category::{Category, CubeCoord, Morphism, Object};
use crate::error::{Error, Result};
use crate::presheaf::{representable, CellComplex, CellId, ComplexMap, Element};

pub use snf::{rank, smith_normal_form, Matrix, Scalar};

/// Normalized chains: one basis element per non-degenerate cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex<T> {
    /// Cells spanning degree `n`, in cell order.
    pub bases: Vec<Vec<CellId>>,
    /// `∂ₙ: Cₙ → Cₙ₋₁` as a `|Cₙ₋₁| × |Cₙ|` matrix; `∂₀` has no rows.
    pub differentials: Vec<Matrix<T>>,
}

/// The faces entering the differential, with their signs.
fn signed_faces(category: &Category, n: u32) -> Result<Vec<(Morphism, i32)>> {
    let sign = |i: u32| if i % 2 == 0 { 1 } else { -1 };
    match category {
        Category::Simplex => Ok((0..=n)
            .map(|i| (Morphism::Simplex { cod: n, values: (0..=n).filter(|&v| v != i).collect() }, sign(i)))
            .collect()),
        Category::BoxMinimal | Category::BoxConnections => {
            let mut out = Vec::new();
            for i in 0..n {
                for (e, s) in [(CubeCoord::Zero, -1), (CubeCoord::One, 1)] {
                    let coords = (0..n)
                        .map(|j| match j.cmp(&i) {
                            std::cmp::Ordering::Less => CubeCoord::Var(j),
                            std::cmp::Ordering::Equal => e.clone(),
                            std::cmp::Ordering::Greater => CubeCoord::Var(j - 1),
                        })
                        .collect();
                    out.push((Morphism::Cube { dom: n - 1, coords }, sign(i) * s));
                }
            }
            Ok(out)
        }
        other => Err(Error::UnsupportedBase(other.to_string())),
    }
}

fn check_base(k: &CellComplex) -> Result<()> {
    match k.instance().category() {
        Category::Simplex | Category::BoxMinimal | Category::BoxConnections => Ok(()),
        other => Err(Error::UnsupportedBase(other.to_string())),
    }
}

/// Position of every cell within its degree's basis.
fn positions(k: &CellComplex) -> (Vec<Vec<CellId>>, Vec<usize>) {
    let top = k.max_degree().map_or(0, |d| d as usize + 1);
    let mut bases = vec![Vec::new(); top];
    let mut position = vec![0; k.len()];
    for (y, cell) in k.cells().iter().enumerate() {
        let d = cell.shape.degree() as usize;
        position[y] = bases[d].len();
        bases[d].push(y);
    }
    (bases, position)
}

pub fn chain_complex<T: Scalar>(k: &CellComplex) -> Result<ChainComplex<T>> {
    check_base(k)?;
    let category = k.instance().category();
    let (bases, position) = positions(k);
    let mut differentials = Vec::with_capacity(bases.len());
    for (n, basis) in bases.iter().enumerate() {
        let rows = if n == 0 { 0 } else { bases[n - 1].len() };
        let mut d = Matrix::zeros(rows, basis.len());
        if n > 0 {
            let faces = signed_faces(category, n as u32)?;
            for (col, &y) in basis.iter().enumerate() {
                for (phi, s) in &faces {
                    let face = k.face(y, phi);
                    if !face.is_degenerate() {
                        d.add_to(position[face.cell], col, T::from(*s));
                    }
                }
            }
        }
        differentials.push(d);
    }
    for n in 1..differentials.len() {
        if !differentials[n - 1].mul(&differentials[n]).is_zero() && differentials[n - 1].rows > 0 {
            return Err(Error::InvalidComplex(format!("∂∂ ≠ 0 in degree {n}")));
        }
    }
    Ok(ChainComplex { bases, differentials })
}

/// `Hₙ ≅ Z^rank ⊕ ⊕ Z/dᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology<T> {
    pub rank: usize,
    pub torsion: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary<T> {
    pub degrees: Vec<DegreeHomology<T>>,
}

impl<T: Scalar> HomologySummary<T> {
    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.rank).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().enumerate().map(|(n, d)| if n % 2 == 0 { d.rank as i64 } else { -(d.rank as i64) }).sum()
    }
}

impl<T: Scalar> fmt::Display for HomologySummary<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, d) in self.degrees.iter().enumerate() {
            write!(f, "H_{n} = ")?;
            let mut parts = Vec::new();
            if d.rank > 0 {
                parts.push(format!("Z^{}", d.rank));
            }
            parts.extend(d.torsion.iter().map(|t| format!("Z/{t}")));
            if parts.is_empty() {
                parts.push("0".into());
            }
            writeln!(f, "{}", parts.join(" + "))?;
        }
        Ok(())
    }
}

/// Homology of a chain complex given by its differentials.
fn homology_of<T: Scalar>(dims: &[usize], differentials: &[Matrix<T>]) -> HomologySummary<T> {
    let factors: Vec<Vec<T>> = differentials.iter().map(smith_normal_form).collect();
    let degrees = (0..dims.len())
        .map(|n| {
            let outgoing = factors[n].len();
            let incoming = factors.get(n + 1).map_or(&[][..], Vec::as_slice);
            DegreeHomology {
                rank: dims[n] - outgoing - incoming.len(),
                torsion: incoming.iter().filter(|d| !d.is_one()).cloned().collect(),
            }
        })
        .collect();
    HomologySummary { degrees }
}

pub fn homology_with<T: Scalar>(k: &CellComplex) -> Result<HomologySummary<T>> {
    let chains = chain_complex::<T>(k)?;
    let dims: Vec<usize> = chains.bases.iter().map(Vec::len).collect();
    Ok(homology_of(&dims, &chains.differentials))
}

/// Homology with arbitrary-precision arithmetic.
pub fn homology(k: &CellComplex) -> Result<HomologySummary<BigInt>> {
    homology_with(k)
}

/// The chain map `Cₙ(K) → Cₙ(L)` of each degree; degenerate images vanish.
pub fn chain_map<T: Scalar>(f: &ComplexMap) -> Result<Vec<Matrix<T>>> {
    check_base(f.source())?;
    check_base(f.target())?;
    let (source, _) = positions(f.source());
    let (target_bases, target_position) = positions(f.target());
    Ok(source
        .iter()
        .enumerate()
        .map(|(n, basis)| {
            let rows = target_bases.get(n).map_or(0, Vec::len);
            let mut m = Matrix::zeros(rows, basis.len());
            for (col, &y) in basis.iter().enumerate() {
                let image = &f.images()[y];
                if !image.is_degenerate() {
                    m.set(target_position[image.cell], col, T::one());
                }
            }
            m
        })
        .collect())
}

/// Whether `f` induces isomorphisms on integral homology in every degree,
/// decided by acyclicity of the mapping cone.
pub fn is_homology_equivalence(f: &ComplexMap) -> Result<bool> {
    let a = chain_complex::<BigInt>(f.source())?;
    let b = chain_complex::<BigInt>(f.target())?;
    let maps = chain_map::<BigInt>(f)?;
    let dim = |c: &ChainComplex<BigInt>, n: usize| c.bases.get(n).map_or(0, Vec::len);
    let top = a.bases.len().max(b.bases.len()) + 1;
    // cone_n = B_n ⊕ A_{n-1},  ∂(b, a) = (∂b + f a, −∂a)
    let cone_dim = |n: usize| dim(&b, n) + if n == 0 { 0 } else { dim(&a, n - 1) };
    let mut differentials = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let rows = if n == 0 { 0 } else { cone_dim(n - 1) };
        let mut d = Matrix::zeros(rows, cone_dim(n));
        if n > 0 {
            let (bn, bn1) = (dim(&b, n), dim(&b, n - 1));
            if let Some(db) = b.differentials.get(n) {
                for i in 0..db.rows {
                    for j in 0..db.cols {
                        d.set(i, j, db.get(i, j).clone());
                    }
                }
            }
            if let Some(fm) = maps.get(n - 1) {
                for i in 0..fm.rows {
                    for j in 0..fm.cols {
                        d.set(i, bn + j, fm.get(i, j).clone());
                    }
                }
            }
            if n >= 2 {
                if let Some(da) = a.differentials.get(n - 1) {
                    for i in 0..da.rows {
                        for j in 0..da.cols {
                            d.set(bn1 + i, bn + j, -da.get(i, j).clone());
                        }
                    }
                }
            }
        }
        differentials.push(d);
    }
    let dims: Vec<usize> = (0..=top).map(cone_dim).collect();
    let h = homology_of(&dims, &differentials);
    Ok(h.degrees.iter().all(|d| d.rank == 0 && d.torsion.is_empty()))
}

/// The unique map to the point, the representable on the terminal object.
pub fn collapse(k: &Arc<CellComplex>) -> Result<ComplexMap> {
    check_base(k)?;
    let (point, to_point): (Object, fn(u32) -> Morphism) = match k.instance().category() {
        Category::Simplex => (Object::Simplex(0), |n| Morphism::Simplex { cod: 0, values: vec![0; n as usize + 1] }),
        _ => (Object::Cube(0), |n| Morphism::Cube { dom: n, coords: vec![] }),
    };
    let target = Arc::new(representable(k.instance(), &point)?);
    let images = k.cells().iter().map(|c| Element { sigma: to_point(c.shape.degree()), cell: 0 }).collect();
    ComplexMap::new(k.clone(), target, images)
}

/// Euler characteristic from the cell census.
pub fn cell_euler_characteristic(k: &CellComplex) -> i64 {
    k.census().iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

/// Whether an object's degree is supported by the chain complex.
pub fn supports_homology(category: &Category) -> bool {
    matches!(category, Category::Simplex | Category::BoxMinimal | Category::BoxConnections)
}

#[cfg(test)]
mod tests;
