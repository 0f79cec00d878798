//! Invariant sweeps, enumerated in one registry.

use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::bipresheaf::{curry_map, ez_square, latching_formula_check};
use crate::category::{compose, Category, CategoryInstance, Object};
use crate::corpus::{builtin, Generator};
use crate::diagonal::{induced_map, DiagonalMode, PromonoidalStructure};
use crate::error::{Error, Result};
use crate::homotopy::is_homology_equivalence;
use crate::presheaf::{is_pushout, representable, skeletal_square, CellComplex, Element};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    fn new(check: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self { check: check.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub verdicts: Vec<Verdict>,
    /// Cells and elements inspected.
    pub touched: usize,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }

    fn merge(&mut self, other: Report) {
        self.verdicts.extend(other.verdicts);
        self.touched += other.touched;
        self.elapsed += other.elapsed;
    }

    fn finish(mut self, started: Instant) -> Self {
        self.verdicts.sort_by(|a, b| a.check.cmp(&b.check));
        self.elapsed = started.elapsed();
        self
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub category: Category,
    pub bound: u32,
    pub seed: u64,
    /// Randomized inputs per sweep.
    pub samples: usize,
}

impl SuiteConfig {
    pub fn new(category: Category, bound: u32) -> Self {
        Self { category, bound, seed: 0, samples: 20 }
    }

    fn instance(&self) -> CategoryInstance {
        CategoryInstance::new(self.category.clone(), self.bound)
    }
}

pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    pub run: fn(&SuiteConfig) -> Result<Report>,
}

pub const SUITES: &[Suite] = &[
    Suite { name: "reedy", description: "unique Reedy factorizations and degree axioms", run: reedy },
    Suite { name: "ez", description: "sections, separation and unique EZ decompositions", run: ez },
    Suite { name: "skeletal", description: "skeletal squares are pushouts", run: skeletal },
    Suite { name: "latching", description: "latching objects of representable bicomplexes", run: latching },
    Suite { name: "ezsquare", description: "the bicomplex skeleton square is a pushout", run: ezsquare },
    Suite { name: "diaglemma", description: "diagonals preserve levelwise homology equivalences", run: diaglemma },
];

pub fn suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

/// Run one suite by name, or every suite for `all`.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<Report> {
    if name == "all" {
        let started = Instant::now();
        let mut report = Report::default();
        for s in SUITES {
            report.merge((s.run)(config)?);
        }
        return Ok(report.finish(started));
    }
    let s = suite(name).ok_or_else(|| Error::Parse { line: 0, message: format!("unknown suite {name}") })?;
    (s.run)(config)
}

fn reedy(config: &SuiteConfig) -> Result<Report> {
    let started = Instant::now();
    let instance = config.instance();
    let category = instance.category();
    let objects = instance.objects();
    let mut report = Report::default();
    for a in &objects {
        for b in &objects {
            let mut unique = true;
            let mut degrees = true;
            for phi in instance.hom(b, a)?.iter() {
                report.touched += 1;
                let mut found = Vec::new();
                for sigma in category.minus_from(b).iter() {
                    for delta in category.plus_into(a).iter().filter(|d| d.domain() == sigma.codomain()) {
                        if compose(delta, sigma)? == *phi {
                            found.push((sigma.clone(), delta.clone()));
                        }
                    }
                }
                unique &= found.len() == 1 && found[0] == instance.reedy_factorize(phi)?;
                let (sigma, delta) = instance.reedy_factorize(phi)?;
                let (mid, low, high) = (sigma.codomain().degree(), b.degree(), a.degree());
                degrees &= (sigma.is_identity() || mid < low) && (delta.is_identity() || mid < high);
            }
            report.verdicts.push(Verdict::new(format!("reedy {category} {b}->{a} factorization"), unique, ""));
            report.verdicts.push(Verdict::new(format!("reedy {category} {b}->{a} degrees"), degrees, ""));
        }
    }
    Ok(report.finish(started))
}

/// Exactly one pair `(σ ∈ A-, non-degenerate y)` with `y·σ = x`, for every element.
fn ez_unique(k: &CellComplex) -> (bool, usize) {
    let category = k.instance().category();
    let mut ok = true;
    let mut touched = 0;
    for c in k.instance().objects() {
        for x in k.evaluate(&c) {
            touched += 1;
            let mut count = 0;
            for sigma in category.minus_from(&c).iter() {
                for &y in k.cells_of_shape(&sigma.codomain()) {
                    if k.act(&Element::cell(y, &sigma.codomain()), sigma).ok().as_ref() == Some(&x) {
                        count += 1;
                    }
                }
            }
            ok &= count == 1;
        }
    }
    (ok, touched)
}

fn corpus(config: &SuiteConfig) -> Result<Vec<(String, Arc<CellComplex>)>> {
    let instance = config.instance();
    let mut out = builtin(&instance)?;
    let mut generator = Generator::new(config.seed);
    for i in 0..config.samples {
        out.push((format!("random{i:02}"), generator.complex(&instance)?));
    }
    Ok(out)
}

fn ez(config: &SuiteConfig) -> Result<Report> {
    let started = Instant::now();
    let instance = config.instance();
    let category = instance.category();
    let mut report = Report::default();
    for a in instance.objects() {
        let minus: Vec<_> = category.minus_from(&a).iter().filter(|s| !s.is_identity()).cloned().collect();
        let mut sections = Vec::new();
        for sigma in &minus {
            let mut s = instance.sections(sigma)?;
            s.sort();
            sections.push(s);
        }
        let nonempty = sections.iter().all(|s| !s.is_empty());
        let mut separated = true;
        for i in 0..minus.len() {
            for j in i + 1..minus.len() {
                separated &= sections[i] != sections[j];
            }
        }
        report.touched += minus.len();
        report.verdicts.push(Verdict::new(format!("ez {category} {a} sections"), nonempty, ""));
        report.verdicts.push(Verdict::new(format!("ez {category} {a} separation"), separated, ""));
    }
    for (name, k) in corpus(config)? {
        let (ok, touched) = ez_unique(&k);
        report.touched += touched;
        report.verdicts.push(Verdict::new(format!("ez {category} {name} decomposition"), ok, format!("{:?}", k.census())));
    }
    Ok(report.finish(started))
}

fn skeletal(config: &SuiteConfig) -> Result<Report> {
    let started = Instant::now();
    let category = config.category.clone();
    let mut report = Report::default();
    for (name, k) in corpus(config)? {
        for n in 0..=config.bound as i64 {
            let square = skeletal_square(&k, n)?;
            report.touched += k.len();
            let pass = square.commutes()? && is_pushout(&square)?;
            report.verdicts.push(Verdict::new(format!("skeletal {category} {name} n={n}"), pass, format!("{:?}", k.census())));
        }
    }
    Ok(report.finish(started))
}

/// Base categories for the bicomplex suites: the factor of a product, or the category itself.
fn base_instance(config: &SuiteConfig) -> Result<CategoryInstance> {
    let base = match &config.category {
        Category::Product(a, b) if a == b => (**a).clone(),
        Category::Product(..) | Category::Slice(..) => {
            return Err(Error::UnsupportedBase(format!("bicomplex sweeps need a base or a square product, not {}", config.category)))
        }
        other => other.clone(),
    };
    Ok(CategoryInstance::new(base, config.bound))
}

fn latching(config: &SuiteConfig) -> Result<Report> {
    let started = Instant::now();
    let base = base_instance(config)?;
    let objects = base.objects();
    let mut report = Report::default();
    for a in &objects {
        for a2 in &objects {
            for b in &objects {
                for c in &objects {
                    let verdict = latching_formula_check(&base, a, a2, b, c)?;
                    report.touched += verdict.colimit_size;
                    report.verdicts.push(Verdict::new(
                        format!("latching {} ({a},{a2}) b={b} c={c}", base.category()),
                        verdict.holds(),
                        format!("{} vs {}", verdict.colimit_size, verdict.formula_size),
                    ));
                }
            }
        }
    }
    Ok(report.finish(started))
}

fn ezsquare(config: &SuiteConfig) -> Result<Report> {
    let started = Instant::now();
    let base = base_instance(config)?;
    let category = base.category().clone();
    let product = CategoryInstance::product(&base, &base);
    let mut inputs = Vec::new();
    for a in base.objects() {
        for a2 in base.objects() {
            if a.degree() + a2.degree() <= config.bound {
                let shape = Object::pair(a.clone(), a2.clone());
                inputs.push((format!("rep({a},{a2})"), Arc::new(representable(&product, &shape)?)));
            }
        }
    }
    let mut generator = Generator::new(config.seed);
    let small = base.with_bound(base.bound().min(1));
    for i in 0..config.samples {
        inputs.push((format!("random{i:02}"), generator.bicomplex(&small, &small)?));
    }
    let mut report = Report::default();
    for (name, x) in inputs {
        let top = x.max_degree().unwrap_or(0) as i64;
        for n in -1..=top {
            let square = ez_square(&x, n)?;
            report.touched += x.len();
            let pass = square.square.commutes()? && square.is_pushout;
            report.verdicts.push(Verdict::new(format!("ezsquare {category} {name} n={n}"), pass, format!("{:?}", x.census())));
        }
    }
    Ok(report.finish(started))
}

/// Diagonal structures defined over a base category.
pub fn structures(base: &Category) -> Vec<DiagonalMode> {
    match base {
        Category::Simplex => vec![DiagonalMode::Categorical, DiagonalMode::Day(PromonoidalStructure::Join)],
        Category::BoxMinimal | Category::BoxConnections => vec![DiagonalMode::Day(PromonoidalStructure::Geometric)],
        _ => vec![],
    }
}

fn diaglemma(config: &SuiteConfig) -> Result<Report> {
    let started = Instant::now();
    let base = base_instance(config)?;
    let category = base.category().clone();
    let modes = structures(&category);
    if modes.is_empty() {
        return Err(Error::UnsupportedBase(format!("no diagonal structure with homology over {category}")));
    }
    let mut generator = Generator::new(config.seed);
    let levels = base.objects();
    let mut report = Report::default();
    for i in 0..config.samples.clamp(10, 12) {
        let (name, f) = generator.equivalence(&base)?;
        let mut premise = true;
        for a in &levels {
            let (_, _, fa) = curry_map(&f, a)?;
            premise &= is_homology_equivalence(&fa)?;
        }
        report.verdicts.push(Verdict::new(format!("diaglemma {category} #{i:02} levelwise"), premise, name.clone()));
        for &mode in &modes {
            let (_, _, diag) = induced_map(&f, mode)?;
            report.touched += diag.source().len() + diag.target().len();
            let pass = is_homology_equivalence(&diag)?;
            report.verdicts.push(Verdict::new(format!("diaglemma {category} #{i:02} {mode}"), pass, name.clone()));
        }
    }
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests;
