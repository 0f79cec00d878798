use super::*;

fn quick(category: Category, bound: u32) -> SuiteConfig {
    SuiteConfig { samples: 3, ..SuiteConfig::new(category, bound) }
}

#[test]
fn registry_names_are_distinct() {
    let mut names: Vec<_> = SUITES.iter().map(|s| s.name).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), SUITES.len());
    assert!(suite("ezsquare").is_some());
    assert!(run_suite("nope", &quick(Category::Simplex, 1)).is_err());
}

#[test]
fn small_suites_pass() {
    for category in [Category::Simplex, Category::BoxMinimal, Category::BoxConnections] {
        for name in ["reedy", "ez", "skeletal"] {
            let report = run_suite(name, &quick(category.clone(), 2)).unwrap();
            assert!(report.passed(), "{name}: {:?}", report.failures().collect::<Vec<_>>());
            assert!(!report.verdicts.is_empty());
        }
    }
}

#[test]
fn slices_fail_the_section_check() {
    let slice = Category::Slice(Box::new(Category::Simplex), Object::Simplex(1));
    let report = run_suite("ez", &SuiteConfig { samples: 0, ..SuiteConfig::new(slice, 3) });
    let report = report.unwrap();
    assert!(report.failures().any(|v| v.check.ends_with("sections")));
}

#[test]
fn verdicts_are_sorted() {
    let report = run_suite("reedy", &quick(Category::Simplex, 1)).unwrap();
    assert!(report.verdicts.windows(2).all(|w| w[0].check <= w[1].check));
}
