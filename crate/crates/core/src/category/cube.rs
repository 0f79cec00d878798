//! Box categories, minimal and with max-connections.
//!
//! An arrow `[1]^n → [1]^m` is the map of vertex sets `{0,1}^n → {0,1}^m`
//! given coordinate-wise: each output is a constant, one input coordinate,
//! or (with connections) the maximum of a set of input coordinates. The
//! input sets of consecutive non-constant outputs are disjoint and strictly
//! ordered, `max S_j < min S_{j+1}`; the minimal box category allows only
//! singletons.

use std::fmt;

use super::Morphism;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CubeCoord {
    Zero,
    One,
    Var(u32),
    /// Maximum of at least two input coordinates, sorted ascending.
    Max(Vec<u32>),
}

impl CubeCoord {
    fn from_set(mut vars: Vec<u32>) -> CubeCoord {
        vars.sort_unstable();
        vars.dedup();
        match vars.len() {
            0 => CubeCoord::Zero,
            1 => CubeCoord::Var(vars[0]),
            _ => CubeCoord::Max(vars),
        }
    }

    pub fn vars(&self) -> &[u32] {
        match self {
            CubeCoord::Var(i) => std::slice::from_ref(i),
            CubeCoord::Max(s) => s,
            _ => &[],
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, CubeCoord::Zero | CubeCoord::One)
    }

    /// Value of this coordinate at a vertex of the domain cube.
    pub fn eval(&self, vertex: &[u8]) -> u8 {
        match self {
            CubeCoord::Zero => 0,
            CubeCoord::One => 1,
            CubeCoord::Var(i) => vertex[*i as usize],
            CubeCoord::Max(s) => s.iter().map(|&i| vertex[i as usize]).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for CubeCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeCoord::Zero => write!(f, "0"),
            CubeCoord::One => write!(f, "1"),
            CubeCoord::Var(i) => write!(f, "x{i}"),
            CubeCoord::Max(s) => {
                for (k, i) in s.iter().enumerate() {
                    if k > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "x{i}")?;
                }
                Ok(())
            }
        }
    }
}

/// Output coordinate of `g ∘ f` given the coordinate `c` of `g` and all of `f`.
pub(super) fn substitute(c: &CubeCoord, f: &[CubeCoord]) -> CubeCoord {
    match c {
        CubeCoord::Zero | CubeCoord::One => c.clone(),
        CubeCoord::Var(i) => f[*i as usize].clone(),
        CubeCoord::Max(s) => {
            let mut vars = Vec::new();
            for &i in s {
                match &f[i as usize] {
                    CubeCoord::One => return CubeCoord::One,
                    CubeCoord::Zero => {}
                    other => vars.extend_from_slice(other.vars()),
                }
            }
            CubeCoord::from_set(vars)
        }
    }
}

pub(super) fn is_valid(dom: u32, coords: &[CubeCoord], connections: bool) -> bool {
    let mut next = 0u32;
    for c in coords {
        match c {
            CubeCoord::Zero | CubeCoord::One => {}
            CubeCoord::Var(i) => {
                if *i < next || *i >= dom {
                    return false;
                }
                next = i + 1;
            }
            CubeCoord::Max(s) => {
                if !connections || s.len() < 2 || s.windows(2).any(|w| w[0] >= w[1]) {
                    return false;
                }
                if s[0] < next || *s.last().unwrap() >= dom {
                    return false;
                }
                next = s.last().unwrap() + 1;
            }
        }
    }
    true
}

pub(super) fn is_minus(coords: &[CubeCoord]) -> bool {
    coords.iter().all(|c| !c.is_constant())
}

pub(super) fn is_plus(dom: u32, coords: &[CubeCoord]) -> bool {
    coords.iter().all(|c| !matches!(c, CubeCoord::Max(_)))
        && coords.iter().filter(|c| matches!(c, CubeCoord::Var(_))).count() as u32 == dom
}

/// Split off the constants: the non-constant outputs form the `A-` part.
pub(super) fn factorize(dom: u32, coords: &[CubeCoord]) -> (Morphism, Morphism) {
    let mut minus = Vec::new();
    let mut plus = Vec::with_capacity(coords.len());
    for c in coords {
        if c.is_constant() {
            plus.push(c.clone());
        } else {
            plus.push(CubeCoord::Var(minus.len() as u32));
            minus.push(c.clone());
        }
    }
    let k = minus.len() as u32;
    (Morphism::Cube { dom, coords: minus }, Morphism::Cube { dom: k, coords: plus })
}

/// All arrows `[1]^n → [1]^m`, sorted.
pub(super) fn hom(n: u32, m: u32, connections: bool) -> Vec<Morphism> {
    // candidate input sets, each with its maximum, ordered by minimum
    let mut sets: Vec<Vec<u32>> = Vec::new();
    if connections {
        for mask in 1u32..(1 << n) {
            sets.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    } else {
        sets.extend((0..n).map(|i| vec![i]));
    }

    fn go(
        n: u32,
        m: usize,
        next: u32,
        sets: &[Vec<u32>],
        cur: &mut Vec<CubeCoord>,
        out: &mut Vec<Morphism>,
    ) {
        if cur.len() == m {
            out.push(Morphism::Cube { dom: n, coords: cur.clone() });
            return;
        }
        for c in [CubeCoord::Zero, CubeCoord::One] {
            cur.push(c);
            go(n, m, next, sets, cur, out);
            cur.pop();
        }
        for s in sets.iter().filter(|s| s[0] >= next) {
            cur.push(CubeCoord::from_set(s.clone()));
            go(n, m, s.last().unwrap() + 1, sets, cur, out);
            cur.pop();
        }
    }

    let mut out = Vec::new();
    go(n, m as usize, 0, &sets, &mut Vec::new(), &mut out);
    out.sort();
    out
}
