//! Plain-text format for complexes and maps.
//!
//! ```text
//! # a filled triangle with its boundary
//! category simplex
//! bound 2
//! cell v0 : 0
//! cell e01 : 1
//! act e01 d0 = id v1
//! map e01 -> [0,0] w
//! ```
//!
//! Lines are whitespace separated and may come in any order; `#` starts a
//! comment. Shapes are degrees for the simplex and box categories and
//! `(<a>,<a'>)` over products. Face generators are `d<i>` (simplex),
//! `d<i>.<e>` (box, inserting the constant `e` at coordinate `i`) and
//! `1:<face>` / `2:<face>` on one slot of a product. A degeneracy is `id`
//! or its encoding: `[0,0,1]` for a surjection of ordinals, `[x0,x1+x2]`
//! for a box degeneracy or connection, `(<s>;<t>)` over a product.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{Category, CategoryInstance, CubeCoord, Morphism, Object};
use crate::error::{Error, Result};
use crate::presheaf::{CellComplex, ComplexMap, Element};

fn split_top(s: &str, sep: char) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '<' => depth += 1,
            ')' | ']' | '>' => depth -= 1,
            c if c == sep && depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn strip_parens(s: &str) -> Option<&str> {
    s.strip_prefix('(')?.strip_suffix(')')
}

pub fn parse_object(category: &Category, token: &str) -> std::result::Result<Object, String> {
    let bad = || format!("`{token}` is not an object of {category}");
    match category {
        Category::Simplex => {
            let t = token.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(token);
            t.parse().map(Object::Simplex).map_err(|_| bad())
        }
        Category::BoxMinimal | Category::BoxConnections => {
            let t = token
                .strip_prefix("[1]^")
                .or_else(|| token.strip_prefix("I^"))
                .unwrap_or(token);
            t.parse().map(Object::Cube).map_err(|_| bad())
        }
        Category::Product(a, b) => {
            let inner = strip_parens(token).ok_or_else(bad)?;
            let (x, y) = split_top(inner, ',').ok_or_else(bad)?;
            Ok(Object::pair(parse_object(a, x)?, parse_object(b, y)?))
        }
        Category::Slice(..) => Err(format!("objects of {category} have no text form")),
    }
}

pub fn format_object(object: &Object) -> String {
    object.to_string()
}

/// Parse a degeneracy (an arrow of `A-`) with the given domain.
pub fn parse_degeneracy(category: &Category, domain: &Object, token: &str) -> std::result::Result<Morphism, String> {
    if token == "id" {
        return Ok(Morphism::identity(domain));
    }
    let bad = || format!("`{token}` is not a degeneracy out of {domain} in {category}");
    let sigma = match (category, domain) {
        (Category::Simplex, Object::Simplex(n)) => {
            let inner = token.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
            let values: Vec<u32> = inner
                .split(',')
                .map(|v| v.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad())?;
            if values.len() as u32 != n + 1 {
                return Err(bad());
            }
            let cod = *values.last().ok_or_else(bad)?;
            Morphism::Simplex { cod, values }
        }
        (Category::BoxMinimal | Category::BoxConnections, Object::Cube(n)) => {
            let inner = token.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
            let mut coords = Vec::new();
            if !inner.is_empty() {
                for part in inner.split(',') {
                    let mut vars = Vec::new();
                    for v in part.split('+') {
                        let i: u32 = v.strip_prefix('x').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                        vars.push(i);
                    }
                    coords.push(if vars.len() == 1 { CubeCoord::Var(vars[0]) } else { CubeCoord::Max(vars) });
                }
            }
            Morphism::Cube { dom: *n, coords }
        }
        (Category::Product(a, b), Object::Pair(x, y)) => {
            let inner = strip_parens(token).ok_or_else(bad)?;
            let (s, t) = split_top(inner, ';').ok_or_else(bad)?;
            Morphism::pair(parse_degeneracy(a, x, s)?, parse_degeneracy(b, y, t)?)
        }
        _ => return Err(bad()),
    };
    if !category.contains_morphism(&sigma) || !sigma.is_minus() {
        return Err(bad());
    }
    Ok(sigma)
}

pub fn format_degeneracy(sigma: &Morphism) -> String {
    if sigma.is_identity() {
        return "id".to_string();
    }
    match sigma {
        Morphism::Pair(s, t) => format!("({};{})", format_degeneracy(s), format_degeneracy(t)),
        other => other.to_string(),
    }
}

/// Parse a generating face with the given codomain.
pub fn parse_face(category: &Category, codomain: &Object, token: &str) -> std::result::Result<Morphism, String> {
    let bad = || format!("`{token}` is not a generating face into {codomain} in {category}");
    match (category, codomain) {
        (Category::Simplex, Object::Simplex(n)) => {
            let i: u32 = token.strip_prefix('d').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if *n == 0 || i > *n {
                return Err(bad());
            }
            Ok(Morphism::Simplex { cod: *n, values: (0..=*n).filter(|&v| v != i).collect() })
        }
        (Category::BoxMinimal | Category::BoxConnections, Object::Cube(n)) => {
            let (i, e) = token.strip_prefix('d').and_then(|t| t.split_once('.')).ok_or_else(bad)?;
            let i: u32 = i.parse().map_err(|_| bad())?;
            let e: u32 = e.parse().map_err(|_| bad())?;
            if i >= *n || e > 1 {
                return Err(bad());
            }
            let mut coords = Vec::with_capacity(*n as usize);
            for k in 0..*n {
                coords.push(match k.cmp(&i) {
                    std::cmp::Ordering::Less => CubeCoord::Var(k),
                    std::cmp::Ordering::Equal => if e == 0 { CubeCoord::Zero } else { CubeCoord::One },
                    std::cmp::Ordering::Greater => CubeCoord::Var(k - 1),
                });
            }
            Ok(Morphism::Cube { dom: n - 1, coords })
        }
        (Category::Product(a, b), Object::Pair(x, y)) => {
            let (slot, rest) = token.split_once(':').ok_or_else(bad)?;
            match slot {
                "1" => Ok(Morphism::pair(parse_face(a, x, rest)?, Morphism::identity(y))),
                "2" => Ok(Morphism::pair(Morphism::identity(x), parse_face(b, y, rest)?)),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

/// Text name of a generating face; `None` for arrows that are not generators.
pub fn format_face(face: &Morphism) -> Option<String> {
    match face {
        Morphism::Simplex { cod, values } => {
            if values.len() as u32 != *cod {
                return None;
            }
            let missing = (0..=*cod).find(|v| !values.contains(v))?;
            Some(format!("d{missing}"))
        }
        Morphism::Cube { dom, coords } => {
            if coords.len() as u32 != dom + 1 {
                return None;
            }
            let (i, c) = coords.iter().enumerate().find(|(_, c)| c.is_constant())?;
            Some(format!("d{i}.{}", if *c == CubeCoord::One { 1 } else { 0 }))
        }
        Morphism::Pair(f, g) => {
            if g.is_identity() {
                format_face(f).map(|s| format!("1:{s}"))
            } else if f.is_identity() {
                format_face(g).map(|s| format!("2:{s}"))
            } else {
                None
            }
        }
        Morphism::Under { .. } => None,
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Read a complex. Face actions are given on generating faces only; all
/// other faces are derived by composition and checked for consistency.
pub fn parse_complex(input: &str) -> Result<CellComplex> {
    let mut category: Option<Category> = None;
    let mut bound: Option<u32> = None;
    let mut cells: Vec<(usize, String, String)> = Vec::new();
    let mut acts: Vec<(usize, String, String, String, String)> = Vec::new();

    for (k, raw) in input.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "category" if tokens.len() == 2 => {
                category = Some(tokens[1].parse().map_err(|e: String| parse_err(line_no, e))?);
            }
            "bound" if tokens.len() == 2 => {
                bound = Some(tokens[1].parse().map_err(|_| parse_err(line_no, "bound must be a natural number"))?);
            }
            "cell" if tokens.len() == 4 && tokens[2] == ":" => {
                cells.push((line_no, tokens[1].to_string(), tokens[3].to_string()));
            }
            "act" if tokens.len() == 6 && tokens[3] == "=" => {
                acts.push((
                    line_no,
                    tokens[1].to_string(),
                    tokens[2].to_string(),
                    tokens[4].to_string(),
                    tokens[5].to_string(),
                ));
            }
            _ => return Err(parse_err(line_no, format!("unrecognized line `{line}`"))),
        }
    }
    let category = category.ok_or_else(|| parse_err(0, "missing `category` line"))?;
    let bound = bound.ok_or_else(|| parse_err(0, "missing `bound` line"))?;
    let instance = CategoryInstance::new(category.clone(), bound);

    let mut names: HashMap<String, usize> = HashMap::new();
    let mut shapes = Vec::new();
    let mut cell_names = Vec::new();
    for (line_no, name, shape) in &cells {
        let shape = parse_object(&category, shape).map_err(|e| parse_err(*line_no, e))?;
        if shape.degree() > bound {
            return Err(parse_err(*line_no, format!("cell `{name}` exceeds the degree bound {bound}")));
        }
        if names.insert(name.clone(), shapes.len()).is_some() {
            return Err(parse_err(*line_no, format!("duplicate cell `{name}`")));
        }
        shapes.push(shape);
        cell_names.push(name.clone());
    }

    let mut generator_faces: Vec<HashMap<Morphism, Element>> = vec![HashMap::new(); shapes.len()];
    for (line_no, id, generator, sigma, target) in &acts {
        let &y = names.get(id).ok_or_else(|| parse_err(*line_no, format!("unknown cell `{id}`")))?;
        let face = parse_face(&category, &shapes[y], generator).map_err(|e| parse_err(*line_no, e))?;
        let &z = names.get(target).ok_or_else(|| parse_err(*line_no, format!("unknown cell `{target}`")))?;
        let sigma = parse_degeneracy(&category, &face.domain(), sigma).map_err(|e| parse_err(*line_no, e))?;
        if sigma.codomain() != shapes[z] {
            return Err(parse_err(
                *line_no,
                format!("degeneracy lands in {} but `{target}` has shape {}", sigma.codomain(), shapes[z]),
            ));
        }
        if generator_faces[y].insert(face, Element { sigma, cell: z }).is_some() {
            return Err(parse_err(*line_no, format!("face `{generator}` of `{id}` given twice")));
        }
    }

    CellComplex::from_generators(instance, cell_names, shapes, generator_faces)
}

/// Write a complex in the text format; the output is deterministic.
pub fn write_complex(complex: &CellComplex) -> String {
    let mut out = String::new();
    out.push_str(&format!("category {}\n", complex.instance().category()));
    out.push_str(&format!("bound {}\n", complex.instance().bound()));
    for cell in complex.cells() {
        out.push_str(&format!("cell {} : {}\n", cell.name, format_object(&cell.shape)));
    }
    for (y, cell) in complex.cells().iter().enumerate() {
        for face in complex.instance().category().face_generators(&cell.shape) {
            let e = complex.face(y, &face);
            let token = format_face(&face).expect("generating faces have names");
            out.push_str(&format!(
                "act {} {} = {} {}\n",
                cell.name,
                token,
                format_degeneracy(&e.sigma),
                complex.cells()[e.cell].name
            ));
        }
    }
    out
}

/// Read `map <src> -> <sigma> <tgt>` lines between two complexes.
pub fn parse_map(input: &str, source: Arc<CellComplex>, target: Arc<CellComplex>) -> Result<ComplexMap> {
    let mut images: Vec<Option<Element>> = vec![None; source.len()];
    let category = target.instance().category().clone();
    for (k, raw) in input.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 5 || tokens[0] != "map" || tokens[2] != "->" {
            return Err(parse_err(line_no, format!("unrecognized line `{line}`")));
        }
        let y = source
            .cell_by_name(tokens[1])
            .ok_or_else(|| parse_err(line_no, format!("unknown source cell `{}`", tokens[1])))?;
        let z = target
            .cell_by_name(tokens[4])
            .ok_or_else(|| parse_err(line_no, format!("unknown target cell `{}`", tokens[4])))?;
        let sigma = parse_degeneracy(&category, &source.cells()[y].shape, tokens[3]).map_err(|e| parse_err(line_no, e))?;
        if sigma.codomain() != target.cells()[z].shape {
            return Err(parse_err(line_no, "degeneracy does not land on the target cell's shape"));
        }
        if images[y].replace(Element { sigma, cell: z }).is_some() {
            return Err(parse_err(line_no, format!("cell `{}` mapped twice", tokens[1])));
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(y, e)| e.ok_or_else(|| parse_err(0, format!("cell `{}` has no image", source.cells()[y].name))))
        .collect::<Result<Vec<_>>>()?;
    ComplexMap::new(source, target, images)
}

pub fn write_map(map: &ComplexMap) -> String {
    let mut out = String::new();
    for (y, e) in map.images().iter().enumerate() {
        out.push_str(&format!(
            "map {} -> {} {}\n",
            map.source().cells()[y].name,
            format_degeneracy(&e.sigma),
            map.target().cells()[e.cell].name
        ));
    }
    out
}
