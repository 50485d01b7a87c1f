//! Built-in expectation table: normal crossings, the three-arm star, the
//! D and star series of Table 1, and the symmetric-matrix family.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use linfree_core::catalog::{canonical_f, family, FamilyId};
use linfree_core::exactalg::{format_rational, int, rat, Rational};
use linfree_core::pipeline::{analyze, Analysis, Options, SectionChoice};
use linfree_core::sections::LinearSection;
use linfree_core::ErrorClass;
use serde::Serialize;

use crate::fmt_multiset;
use crate::properties::property_checks;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

/// Expands `(p, q)` blocks into `p, p+1, …, p+q-1`.
pub fn blocks(list: &[(Rational, usize)]) -> Vec<Rational> {
    let mut out: Vec<Rational> = list
        .iter()
        .flat_map(|(p, q)| (0..*q).map(move |j| p + int(j as i64)))
        .collect();
    out.sort();
    out
}

fn repeat(v: Rational, times: usize) -> impl Iterator<Item = Rational> {
    std::iter::repeat(v).take(times)
}

/// Spectra at `t = 0` and `t ≠ 0` and the residues of `t∂_t`, as multisets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesExpectation {
    pub t0: Vec<Rational>,
    pub generic: Vec<Rational>,
    pub residues: Vec<Rational>,
}

pub fn dynkin_d_expectation(m: usize) -> SeriesExpectation {
    let mi = m as i64;
    let b = [
        (rat(4 * mi - 10, 3), m - 3),
        (int(mi - 3), 2 * m - 4),
        (rat(5 * mi - 11, 3), m - 3),
    ];
    let mut residues: Vec<Rational> = repeat(rat(-1, 3), m - 3)
        .chain(repeat(int(0), 2 * m - 4))
        .chain(repeat(rat(1, 3), m - 3))
        .collect();
    residues.sort();
    SeriesExpectation {
        t0: blocks(&b),
        generic: blocks(&b),
        residues,
    }
}

pub fn star_expectation(m: usize) -> SeriesExpectation {
    let mi = m as i64;
    let mut g0 = Vec::new();
    for l in 0..=mi - 3 {
        g0.push((
            int((mi - 1 - l) * (mi - 2) + l * (l - 1) / 2),
            (l + 1) as usize,
        ));
    }
    g0.push((int((mi - 1) * (mi - 2) / 2), 2 * (m - 1)));
    for l in 0..=mi - 3 {
        g0.push((int((mi - l - 1) * (mi + l) / 2), (mi - l - 2) as usize));
    }
    let mut gt = Vec::new();
    let k = mi / 2;
    if m % 2 == 1 {
        for j in 0..k {
            gt.push((int(2 * k * k - j), m - 2));
        }
        gt.push((int(2 * k * k - k), 2 * m - 2));
        for j in 0..k {
            gt.push((int(2 * k * k + k - j), m - 2));
        }
    } else {
        gt.push((int(mi * k - k), (k - 1) as usize));
        for j in 0..k - 1 {
            gt.push((int(mi * k - mi - j), m - 2));
        }
        gt.push((int(2 * k * k - 3 * k + 1), 2 * m - 2));
        for j in 0..k - 1 {
            gt.push((int(mi * k - k - j), m - 2));
        }
        gt.push((int(mi * k - mi + 1), (k - 1) as usize));
    }
    let d = mi * mi - mi;
    let mut residues = Vec::new();
    for l in 0..=mi - 3 {
        residues.extend(repeat(
            rat(l - (mi - 1 - l) * (mi - 2), d),
            (l + 1) as usize,
        ));
        residues.extend(repeat(rat((mi - 1) * (l + 1), d), (mi - l - 2) as usize));
    }
    residues.extend(repeat(int(0), 2 * (m - 1)));
    residues.sort();
    SeriesExpectation {
        t0: blocks(&g0),
        generic: blocks(&gt),
        residues,
    }
}

/// Published generic spectra of the symmetric-matrix family, in basis order.
pub fn sym_spectrum(k: usize) -> Option<Vec<Rational>> {
    let v: Vec<(i64, i64)> = match k {
        2 => vec![(3, 4), (1, 1), (5, 4)],
        3 => vec![(2, 1), (5, 2), (2, 1), (3, 1), (5, 2), (3, 1)],
        4 => vec![
            (15, 4),
            (13, 3),
            (9, 2),
            (17, 4),
            (4, 1),
            (5, 1),
            (19, 4),
            (9, 2),
            (14, 3),
            (21, 4),
        ],
        5 => vec![
            (6, 1),
            (53, 8),
            (7, 1),
            (27, 4),
            (7, 1),
            (55, 8),
            (6, 1),
            (7, 1),
            (8, 1),
            (57, 8),
            (7, 1),
            (29, 4),
            (7, 1),
            (59, 8),
            (8, 1),
        ],
        _ => return None,
    };
    Some(v.into_iter().map(|(a, b)| rat(a, b)).collect())
}

#[derive(Clone, Debug, Default)]
pub struct Expected {
    pub t0: Option<Vec<Rational>>,
    pub generic: Option<Vec<Rational>>,
    pub nu1: Option<Vec<Rational>>,
    pub k: Option<u32>,
    pub residues: Option<Vec<Rational>>,
    pub min_mult: Option<usize>,
    pub special: Option<bool>,
    pub jordan_generic: Option<Vec<usize>>,
    pub flat_contains: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum Expect {
    Analysis(Box<Expected>),
    /// The run must fail with this error code.
    Error(&'static str),
}

#[derive(Clone, Debug)]
pub enum RowSection {
    Canonical,
    Given(Vec<i64>),
    Random(u64),
}

#[derive(Clone, Debug)]
pub struct Row {
    pub id: String,
    pub family: FamilyId,
    pub section: RowSection,
    pub expect: Expect,
    pub extended: bool,
    pub note: &'static str,
}

fn sorted(v: Vec<Rational>) -> Vec<Rational> {
    let mut v = v;
    v.sort();
    v
}

fn spectrum_row(id: &str, family: FamilyId, section: RowSection, e: Expected) -> Row {
    Row {
        id: id.into(),
        family,
        section,
        expect: Expect::Analysis(Box::new(e)),
        extended: false,
        note: "",
    }
}

fn series_row(family: FamilyId, e: SeriesExpectation) -> Row {
    let id = format!("{family} random:0");
    spectrum_row(
        &id,
        family,
        RowSection::Random(0),
        Expected {
            t0: Some(e.t0),
            generic: Some(e.generic),
            residues: Some(e.residues),
            ..Expected::default()
        },
    )
}

pub fn default_rows() -> Vec<Row> {
    let mut rows = Vec::new();
    for n in 2..=8usize {
        let seq: Vec<Rational> = (0..n as i64).map(int).collect();
        rows.push(spectrum_row(
            &format!("nc:{n}"),
            FamilyId::NormalCrossing(n),
            RowSection::Canonical,
            Expected {
                t0: Some(seq.clone()),
                generic: Some(seq),
                jordan_generic: Some(vec![n]),
                special: Some(true),
                ..Expected::default()
            },
        ));
    }
    let star3 = star_expectation(3);
    rows.push(Row {
        id: "star:3 canonical".into(),
        family: FamilyId::Star(3),
        section: RowSection::Canonical,
        expect: Expect::Error("NotFinite"),
        extended: false,
        note: "the printed section has two parallel columns, so it lies on the dual divisor",
    });
    rows.push(spectrum_row(
        "star:3 a11+a12+a22+a23",
        FamilyId::Star(3),
        RowSection::Given(vec![1, 0, 1, 1, 0, 1]),
        Expected {
            t0: Some(star3.t0.clone()),
            generic: Some(star3.generic.clone()),
            nu1: Some(sorted(vec![int(0), int(3), int(2), int(3), int(4), int(3)])),
            k: Some(0),
            residues: Some(star3.residues.clone()),
            min_mult: Some(1),
            flat_contains: Some(2),
            special: Some(true),
            ..Expected::default()
        },
    ));
    rows.push(series_row(FamilyId::Star(3), star3));
    rows.push(series_row(FamilyId::DynkinD(4), dynkin_d_expectation(4)));
    rows.push(series_row(FamilyId::DynkinD(5), dynkin_d_expectation(5)));
    let sym2 = sorted(sym_spectrum(2).expect("tabulated"));
    rows.push(spectrum_row(
        "sym:2",
        FamilyId::SymMatrices(2),
        RowSection::Canonical,
        Expected {
            t0: Some(sym2.clone()),
            generic: Some(sym2),
            nu1: Some(sorted(vec![int(0), rat(7, 4), rat(5, 4)])),
            special: Some(false),
            ..Expected::default()
        },
    ));
    for (k, min_mult) in [(3, 2), (4, 1)] {
        let s = sorted(sym_spectrum(k).expect("tabulated"));
        rows.push(spectrum_row(
            &format!("sym:{k} random:0"),
            FamilyId::SymMatrices(k),
            RowSection::Random(0),
            Expected {
                t0: Some(s.clone()),
                generic: Some(s),
                min_mult: Some(min_mult),
                special: Some(false),
                ..Expected::default()
            },
        ));
    }
    let mut ext = vec![
        series_row(FamilyId::Star(4), star_expectation(4)),
        series_row(FamilyId::DynkinD(6), dynkin_d_expectation(6)),
    ];
    let s5 = sorted(sym_spectrum(5).expect("tabulated"));
    ext.push(spectrum_row(
        "sym:5 random:0",
        FamilyId::SymMatrices(5),
        RowSection::Random(0),
        Expected {
            t0: Some(s5.clone()),
            generic: Some(s5),
            min_mult: Some(2),
            ..Expected::default()
        },
    ));
    for r in &mut ext {
        r.extended = true;
    }
    rows.extend(ext);
    rows
}

/// Keeps rows whose family id starts with `pattern` or whose id equals it.
pub fn select<'a>(rows: &'a [Row], pattern: Option<&str>, extended: bool) -> Vec<&'a Row> {
    rows.iter()
        .filter(|r| extended || !r.extended)
        .filter(|r| pattern.map_or(true, |p| r.family.to_string().starts_with(p) || r.id == p))
        .collect()
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Stopped at a resource cap; reported, not counted as a pass.
    Capped,
}

/// Conjecture-support observation, never a pass/fail criterion.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Info {
    pub name: &'static str,
    pub supported: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowResult {
    pub id: String,
    pub extended: bool,
    pub status: Status,
    pub checks: Vec<Check>,
    pub properties: Vec<Check>,
    pub info: Vec<Info>,
    pub error: Option<String>,
    pub note: &'static str,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub analysis: Option<Box<Analysis>>,
}

fn multiset_check(name: &str, want: &[Rational], got: &[Rational]) -> Check {
    let mut g = got.to_vec();
    g.sort();
    Check {
        name: name.into(),
        expected: fmt_multiset(want),
        got: fmt_multiset(&g),
        ok: g == want,
    }
}

fn value_check<T: std::fmt::Debug + PartialEq>(name: &str, want: &T, got: &T) -> Check {
    Check {
        name: name.into(),
        expected: format!("{want:?}"),
        got: format!("{got:?}"),
        ok: want == got,
    }
}

/// Compares an analysis with its expectation.
pub fn expectation_checks(e: &Expected, a: &Analysis) -> Vec<Check> {
    let s = &a.spectrum;
    let mut out = Vec::new();
    if let Some(w) = &e.t0 {
        out.push(multiset_check("spectrum t = 0", w, &s.spectrum_t0));
    }
    if let Some(w) = &e.generic {
        out.push(multiset_check("spectrum t != 0", w, &s.spectrum_generic));
    }
    if let Some(w) = &e.nu1 {
        out.push(multiset_check("nu1", w, &s.nu1));
    }
    if let Some(w) = &e.residues {
        out.push(multiset_check("residues", w, &a.conjecture.residues));
    }
    if let Some(w) = e.k {
        out.push(value_check("k", &w, &s.k));
    }
    if let Some(w) = e.min_mult {
        out.push(value_check("min_mult", &w, &a.conjecture.min_mult));
    }
    if let Some(w) = e.special {
        out.push(value_check("special", &w, &a.divisor.special));
    }
    if let Some(w) = &e.jordan_generic {
        let mut got = a.monodromy_generic.jordan_blocks.clone();
        got.sort_unstable();
        out.push(value_check("jordan blocks", w, &got));
    }
    if let Some(i) = e.flat_contains {
        let f = &a.conjecture.flat_indices;
        out.push(Check {
            name: "flat index".into(),
            expected: format!("contains {i}"),
            got: format!("{f:?}"),
            ok: f.contains(&i),
        });
    }
    out
}

pub fn conjecture_info(a: &Analysis) -> Vec<Info> {
    vec![
        Info {
            name: "extra symmetry of nu3",
            supported: a.conjecture.extra_symmetry,
        },
        Info {
            name: "residues symmetric about 0",
            supported: a.conjecture.residues_symmetric,
        },
        Info {
            name: "symmetry of nu2 (t = 0)",
            supported: a.conjecture.t0_symmetry,
        },
    ]
}

fn section_choice(row: &Row) -> Result<SectionChoice, String> {
    match &row.section {
        RowSection::Canonical => canonical_f(row.family)
            .map(SectionChoice::Given)
            .ok_or_else(|| "no canonical section".into()),
        RowSection::Given(v) => LinearSection::new(v.iter().map(|&x| int(x)).collect())
            .map(SectionChoice::Given)
            .map_err(|e| e.to_string()),
        RowSection::Random(seed) => Ok(SectionChoice::Random(*seed)),
    }
}

pub fn run_row(row: &Row, opts: &Options) -> RowResult {
    let start = Instant::now();
    let outcome = family(row.family)
        .map_err(|e| (e.class(), e.code(), e.to_string()))
        .and_then(|p| {
            let choice = section_choice(row).map_err(|m| (ErrorClass::Input, "UsageError", m))?;
            analyze(&p, &choice, opts).map_err(|e| (e.class(), e.code(), e.to_string()))
        });
    let mut res = RowResult {
        id: row.id.clone(),
        extended: row.extended,
        status: Status::Fail,
        checks: Vec::new(),
        properties: Vec::new(),
        info: Vec::new(),
        error: None,
        note: row.note,
        elapsed: Duration::ZERO,
        analysis: None,
    };
    match (&row.expect, outcome) {
        (Expect::Analysis(e), Ok(a)) => {
            res.checks = expectation_checks(e, &a);
            res.properties = property_checks(&a);
            res.info = conjecture_info(&a);
            let ok = res.checks.iter().chain(&res.properties).all(|c| c.ok);
            res.status = if ok { Status::Pass } else { Status::Fail };
            res.analysis = Some(Box::new(a));
        }
        (Expect::Analysis(_), Err((class, _, msg))) => {
            res.status = if class == ErrorClass::Resource {
                Status::Capped
            } else {
                Status::Fail
            };
            res.error = Some(msg);
        }
        (Expect::Error(code), Ok(_)) => {
            res.checks.push(value_check(
                "error",
                &code.to_string(),
                &"success".to_string(),
            ));
        }
        (Expect::Error(code), Err((_, got, msg))) => {
            res.checks
                .push(value_check("error", &code.to_string(), &got.to_string()));
            res.status = if *code == got {
                Status::Pass
            } else {
                Status::Fail
            };
            res.error = Some(msg);
        }
    }
    res.elapsed = start.elapsed();
    res
}

/// Runs rows on a worker pool; results come back in input order.
pub fn run_rows(rows: &[&Row], opts: &Options, threads: usize) -> Vec<RowResult> {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    // Largest first so the long rows do not end up last.
    order.sort_by_key(|&i| std::cmp::Reverse(rows[i].family.dimension()));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<RowResult>>> = Mutex::new((0..rows.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, rows.len().max(1)) {
            s.spawn(|| loop {
                let j = next.fetch_add(1, Ordering::SeqCst);
                let Some(&i) = order.get(j) else { break };
                let r = run_row(rows[i], opts);
                slots.lock().expect("no panics while held")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("workers joined")
        .into_iter()
        .map(|r| r.expect("every row ran"))
        .collect()
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn format_result(r: &RowResult) -> String {
    let tag = match r.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Capped => "CAP ",
    };
    let mut s = format!(
        "{tag} {}{}",
        r.id,
        if r.extended { " [extended]" } else { "" }
    );
    if let Some(e) = &r.error {
        s.push_str(&format!(": {e}"));
    }
    for c in r.checks.iter().chain(&r.properties).filter(|c| !c.ok) {
        s.push_str(&format!(
            "\n     {}: expected {}, got {}",
            c.name, c.expected, c.got
        ));
    }
    for i in &r.info {
        s.push_str(&format!(
            "\n     info {}: supported: {}",
            i.name,
            if i.supported { "yes" } else { "no" }
        ));
    }
    if !r.note.is_empty() {
        s.push_str(&format!("\n     note: {}", r.note));
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct RegressReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub rows: Vec<RowResult>,
    pub passed: usize,
    pub failed: usize,
    pub capped: usize,
}

impl RegressReport {
    pub fn new(rows: Vec<RowResult>) -> Self {
        let count = |s| rows.iter().filter(|r| r.status == s).count();
        let (passed, failed, capped) = (
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Capped),
        );
        RegressReport {
            schema_version: crate::report::SCHEMA_VERSION,
            kind: "regress",
            rows,
            passed,
            failed,
            capped,
        }
    }
}

/// Formats a rational list for the table.
pub fn fmt_list(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}
