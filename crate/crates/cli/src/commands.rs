use std::path::PathBuf;
use std::str::FromStr;

use dforms::fixtures::{self, Symmetry};
use dforms::identities::{run_on_form, run_suite, SuiteConfig, SUITE_IDENTITIES};
use dforms::invariants as inv;
use dforms::pfaffian;
use dforms::{DoubleForm, Rational, Scalar};

use crate::error::CliError;
use crate::report::{InvariantValue, Report};
use crate::tensor::{ScalarKind, Tensor, TensorFile};

/// Scalar field for commands that create tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" | "rational" => Ok(Mode::Exact),
            "float" | "float64" => Ok(Mode::Float),
            other => Err(format!("unknown mode {other:?} (expected exact or float)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `s_k`
    S,
    /// `t_k`
    T,
    /// `s_{(r,q)}`
    Srq,
    /// `h_{2k}`
    H2k,
    /// `T_{2k}`
    Einstein,
    /// `N_{2k}`
    N,
    /// `h_{(r,pq)}`
    Hrpq,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "s" => Family::S,
            "t" => Family::T,
            "srq" => Family::Srq,
            "h2k" => Family::H2k,
            "T" => Family::Einstein,
            "N" => Family::N,
            "hrpq" => Family::Hrpq,
            other => return Err(format!("unknown family {other:?} (expected s, t, srq, h2k, T, N or hrpq)")),
        })
    }
}

/// `all` or a comma-separated list of indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Indices {
    All,
    List(Vec<usize>),
}

impl FromStr for Indices {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "all" {
            return Ok(Indices::All);
        }
        parse_list(s).map(|v| Indices::List(v.into_iter().map(|x| x as usize).collect()))
    }
}

impl Indices {
    fn resolve(&self, all: impl Iterator<Item = usize>) -> Vec<usize> {
        match self {
            Indices::All => all.collect(),
            Indices::List(v) => v.clone(),
        }
    }
}

/// Parses `a,b,c`, an inclusive range `lo..hi` (also `lo..=hi` or `lo-hi`),
/// or a mix such as `1,4..6`.
pub fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bounds = part
            .split_once("..=")
            .or_else(|| part.split_once(".."))
            .or_else(|| part.split_once('-'));
        match bounds {
            Some((lo, hi)) => {
                let lo: u64 = lo.trim().parse().map_err(|_| format!("bad range {part:?}"))?;
                let hi: u64 = hi.trim().parse().map_err(|_| format!("bad range {part:?}"))?;
                if lo > hi {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().map_err(|_| format!("bad number {part:?}"))?),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

/// A [`parse_list`] value as a command-line argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumList(pub Vec<u64>);

impl FromStr for NumList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_list(s).map(NumList)
    }
}

#[derive(Clone, Debug)]
pub struct InvariantsArgs {
    pub family: Family,
    pub k: Indices,
    pub r: Option<usize>,
}

/// Evaluates one invariant family on a double form file, in the file's scalar.
pub fn invariants(file: &TensorFile, args: &InvariantsArgs) -> Result<Report, CliError> {
    match file.scalar {
        ScalarKind::Rational => invariants_with::<Rational>(file, args),
        ScalarKind::Float64 => invariants_with::<f64>(file, args),
    }
}

fn double_form<S: Scalar>(file: &TensorFile, what: &str) -> Result<DoubleForm<S>, CliError> {
    match file.decode::<S>()? {
        Tensor::Double(w) => Ok(w),
        _ => Err(CliError::Usage(format!("{what} needs a double_form file"))),
    }
}

fn required_r(r: Option<usize>, family: &str) -> Result<usize, CliError> {
    r.ok_or_else(|| CliError::Usage(format!("--family {family} needs --r")))
}

fn invariants_with<S: Scalar>(file: &TensorFile, args: &InvariantsArgs) -> Result<Report, CliError> {
    let w = double_form::<S>(file, "invariants")?;
    let n = w.n();
    let mut report = Report::new("invariants", S::NAME);
    let out = &mut report.invariants;
    let form = |d: DoubleForm<S>| TensorFile::encode(&Tensor::Double(d));
    match args.family {
        Family::S => {
            for k in args.k.resolve(0..=n) {
                out.push(InvariantValue::scalar("s_k", &[("k", k)], inv::s_k(&w, k)?.render()));
            }
        }
        Family::T => {
            for k in args.k.resolve(0..n) {
                out.push(InvariantValue::form("t_k", &[("k", k)], form(inv::t_k(&w, k)?)));
            }
        }
        Family::Srq => {
            let r = required_r(args.r, "srq")?;
            for q in args.k.resolve(0..=n.saturating_sub(r)) {
                out.push(InvariantValue::form("s_(r,q)", &[("r", r), ("q", q)], form(inv::s_rq(&w, r, q)?)));
            }
        }
        Family::H2k => {
            for k in args.k.resolve(0..=n / 2) {
                out.push(InvariantValue::scalar("h_2k", &[("k", k)], inv::h2k(&w, k)?.render()));
            }
        }
        Family::Einstein => {
            for k in args.k.resolve(0..n.div_ceil(2)) {
                out.push(InvariantValue::form("T_2k", &[("k", k)], form(inv::t2k(&w, k)?)));
            }
        }
        Family::N => {
            for k in args.k.resolve(0..n / 2) {
                out.push(InvariantValue::form("N_2k", &[("k", k)], form(inv::n2k(&w, k)?)));
            }
        }
        Family::Hrpq => {
            let r = required_r(args.r, "hrpq")?;
            let p = w.p();
            let top = if p == 0 { 0 } else { n.saturating_sub(r) / p };
            for q in args.k.resolve(0..=top) {
                let v = inv::h_rpq(&w, r, q)?;
                out.push(InvariantValue::form("h_(r,pq)", &[("r", r), ("p", p), ("q", q)], form(v)));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct VerifyArgs {
    pub dims: Vec<usize>,
    pub seeds: Vec<u64>,
    pub mode: Mode,
    pub only: Option<String>,
    /// Tensor files to check instead of the generated fixtures.
    pub inputs: Vec<PathBuf>,
}

/// Runs the identity suite over generated fixtures, or the applicable checks
/// over the given tensor files.
pub fn verify(args: &VerifyArgs) -> Result<Report, CliError> {
    if let Some(only) = &args.only {
        if !SUITE_IDENTITIES.contains(&only.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown identity {only:?}; known identities: {}",
                SUITE_IDENTITIES.join(", ")
            )));
        }
    }
    match args.mode {
        Mode::Exact => verify_with::<Rational>(args),
        Mode::Float => verify_with::<f64>(args),
    }
}

fn verify_with<S: Scalar>(args: &VerifyArgs) -> Result<Report, CliError> {
    let mut report = Report::new("verify", S::NAME);
    report.seeds = args.seeds.clone();
    if args.inputs.is_empty() {
        report.dims = args.dims.clone();
        let config = SuiteConfig {
            dims: args.dims.clone(),
            seeds: args.seeds.clone(),
            only: args.only.clone(),
        };
        return Ok(report.with_identities(run_suite::<S>(&config)));
    }
    let seed = args.seeds.first().copied().unwrap_or(1);
    let mut results = Vec::new();
    for path in &args.inputs {
        let file = TensorFile::read(path)?;
        let label = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        report.inputs.push(path.display().to_string());
        match file.decode::<S>()? {
            Tensor::Double(w) => results.extend(run_on_form(&w, &label, seed, args.only.as_deref())),
            Tensor::Form(e) => {
                let d = e.degree();
                if d > 0 && d % 2 == 0 && e.n() % d == 0 {
                    let r = pfaffian::check_pf_squared(&e, 2)?.on(label);
                    if args.only.as_ref().is_none_or(|o| *o == r.name) {
                        results.push(r);
                    }
                }
            }
            Tensor::Multi(_) => {
                return Err(CliError::Usage(format!("{}: no identity checks apply to a multiform", path.display())));
            }
        }
    }
    results.sort_by(|a, b| (&a.name, &a.params, &a.fixture).cmp(&(&b.name, &b.params, &b.fixture)));
    Ok(report.with_identities(results))
}

/// Pfaffian, hyperdeterminant and the `Pf^r` versus `Det` comparison.
pub fn pfaffian(file: &TensorFile, r: Option<usize>) -> Result<Report, CliError> {
    match file.scalar {
        ScalarKind::Rational => pfaffian_with::<Rational>(file, r),
        ScalarKind::Float64 => pfaffian_with::<f64>(file, r),
    }
}

fn pfaffian_with<S: Scalar>(file: &TensorFile, r: Option<usize>) -> Result<Report, CliError> {
    let mut report = Report::new("pfaffian", S::NAME);
    let (form, r) = match file.decode::<S>()? {
        Tensor::Double(h) => {
            if h.bidegree() != (1, 1) || !h.is_skew() {
                return Err(CliError::Usage("pfaffian needs a skew (1,1) double form, a form or a multiform".into()));
            }
            if r.is_some_and(|r| r != 2) {
                return Err(CliError::Usage("a skew bilinear form only supports --r 2".into()));
            }
            (pfaffian::skew_to_form(&h)?, 2)
        }
        Tensor::Form(e) => (e, r.unwrap_or(2)),
        Tensor::Multi(m) => {
            let det = pfaffian::hyperdet(&m)?;
            report.invariants.push(InvariantValue::scalar(
                "Det",
                &[("k", m.slot_degree()), ("r", m.slots())],
                det.render(),
            ));
            return Ok(report);
        }
    };
    let d = form.degree();
    report.invariants.push(InvariantValue::scalar("Pf", &[("degree", d)], pfaffian::pf(&form)?.render()));
    let det = pfaffian::hyperdet(&pfaffian::embed(&form, r)?)?;
    report.invariants.push(InvariantValue::scalar("Det", &[("degree", d), ("r", r)], det.render()));
    let check = pfaffian::check_pf_squared(&form, r)?.on("input");
    Ok(report.with_identities(vec![check]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Metric,
    Symmetric,
    Skew,
    General,
    Bianchi,
    DegenerateBianchi,
    ConstantCurvature,
    RankOne,
    Nilpotent,
    RandomMetric,
    Form,
    DoubleForm,
}

impl GenKind {
    pub const NAMES: &'static [&'static str] = &[
        "metric",
        "symmetric",
        "skew",
        "general",
        "bianchi",
        "degenerate-bianchi",
        "constant-curvature",
        "rank-one",
        "nilpotent",
        "random-metric",
        "form",
        "double-form",
    ];
}

impl FromStr for GenKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "metric" => GenKind::Metric,
            "symmetric" => GenKind::Symmetric,
            "skew" => GenKind::Skew,
            "general" => GenKind::General,
            "bianchi" => GenKind::Bianchi,
            "degenerate-bianchi" => GenKind::DegenerateBianchi,
            "constant-curvature" => GenKind::ConstantCurvature,
            "rank-one" => GenKind::RankOne,
            "nilpotent" => GenKind::Nilpotent,
            "random-metric" => GenKind::RandomMetric,
            "form" => GenKind::Form,
            "double-form" => GenKind::DoubleForm,
            other => return Err(format!("unknown kind {other:?} (expected one of {})", GenKind::NAMES.join(", "))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct GenerateArgs {
    pub kind: GenKind,
    pub n: usize,
    /// Bianchi degree, form degree, or first degree of a double form.
    pub p: usize,
    /// Second degree of a double form; defaults to `p`.
    pub q: Option<usize>,
    pub seed: u64,
    pub terms: usize,
    pub kappa: String,
    pub mode: Mode,
}

pub fn generate(args: &GenerateArgs) -> Result<TensorFile, CliError> {
    match args.mode {
        Mode::Exact => generate_with::<Rational>(args),
        Mode::Float => generate_with::<f64>(args),
    }
}

fn generate_with<S: Scalar>(a: &GenerateArgs) -> Result<TensorFile, CliError> {
    let n = a.n;
    if n > dforms::multiindex::MAX_DIM {
        return Err(dforms::Error::DimensionTooLarge(n).into());
    }
    let q = a.q.unwrap_or(a.p);
    let uses_p = matches!(a.kind, GenKind::Bianchi | GenKind::Form | GenKind::DoubleForm);
    if uses_p && (a.p > n || q > n) {
        return Err(CliError::Usage(format!("degrees ({}, {q}) exceed n = {n}", a.p)));
    }
    if a.kind == GenKind::Bianchi && a.p == 0 {
        return Err(CliError::Usage("a Bianchi fixture needs p >= 1".into()));
    }
    let w = match a.kind {
        GenKind::Metric => DoubleForm::metric(n),
        GenKind::Symmetric => fixtures::random_bilinear(n, a.seed, Symmetry::Symmetric),
        GenKind::Skew => fixtures::random_bilinear(n, a.seed, Symmetry::Skew),
        GenKind::General => fixtures::random_bilinear(n, a.seed, Symmetry::General),
        GenKind::Bianchi => fixtures::random_bianchi(n, a.p, a.terms, a.seed),
        GenKind::DegenerateBianchi => fixtures::degenerate_bianchi(n, a.seed),
        GenKind::ConstantCurvature => {
            let kappa = S::parse(&a.kappa).ok_or_else(|| CliError::Usage(format!("cannot parse kappa {:?}", a.kappa)))?;
            fixtures::constant_curvature(n, kappa)
        }
        GenKind::RankOne => fixtures::rank_one(n, a.seed),
        GenKind::Nilpotent => fixtures::nilpotent(n),
        GenKind::RandomMetric => fixtures::random_metric(n, a.seed),
        GenKind::Form => return Ok(TensorFile::encode(&Tensor::Form(fixtures::random_form::<S>(n, a.p, a.seed)))),
        GenKind::DoubleForm => fixtures::random_double_form(n, a.p, q, a.seed),
    };
    Ok(TensorFile::encode(&Tensor::Double(w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(args: GenerateArgs) -> TensorFile {
        generate(&args).unwrap()
    }

    fn gen(kind: GenKind, n: usize) -> GenerateArgs {
        GenerateArgs {
            kind,
            n,
            p: 2,
            q: None,
            seed: 1,
            terms: 1,
            kappa: "1".into(),
            mode: Mode::Exact,
        }
    }

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_list("2..4").unwrap(), [2, 3, 4]);
        assert_eq!(parse_list("2..=3,7").unwrap(), [2, 3, 7]);
        assert_eq!(parse_list("1-2").unwrap(), [1, 2]);
        assert!(parse_list("4..2").is_err());
        assert!(parse_list("x").is_err());
        assert_eq!("all".parse::<Indices>().unwrap(), Indices::All);
        assert_eq!("T".parse::<Family>().unwrap(), Family::Einstein);
        assert!("q".parse::<Family>().is_err());
        assert_eq!("float64".parse::<Mode>().unwrap(), Mode::Float);
    }

    #[test]
    fn metric_s_row_is_binomial() {
        let f = file(gen(GenKind::Metric, 5));
        let args = InvariantsArgs { family: Family::S, k: Indices::All, r: None };
        let rep = invariants(&f, &args).unwrap();
        let got: Vec<_> = rep.invariants.iter().map(|v| v.value.clone().unwrap()).collect();
        assert_eq!(got, ["1", "5", "10", "10", "5", "1"]);
    }

    #[test]
    fn constant_curvature_h2k() {
        let f = file(gen(GenKind::ConstantCurvature, 6));
        let args = InvariantsArgs { family: Family::H2k, k: Indices::All, r: None };
        let got: Vec<_> = invariants(&f, &args).unwrap().invariants.into_iter().map(|v| v.value.unwrap()).collect();
        assert_eq!(got, ["1", "15", "90", "90"]);
    }

    #[test]
    fn every_family_evaluates() {
        let r = file(gen(GenKind::Bianchi, 5));
        for (family, rr) in [
            (Family::H2k, None),
            (Family::Einstein, None),
            (Family::N, None),
            (Family::Hrpq, Some(1)),
        ] {
            let rep = invariants(&r, &InvariantsArgs { family, k: Indices::All, r: rr }).unwrap();
            assert!(!rep.invariants.is_empty(), "{family:?}");
        }
        let h = file(gen(GenKind::Symmetric, 4));
        for (family, rr) in [(Family::T, None), (Family::Srq, Some(2))] {
            let rep = invariants(&h, &InvariantsArgs { family, k: Indices::All, r: rr }).unwrap();
            assert!(rep.invariants.iter().all(|v| v.tensor.is_some()));
        }
        let missing = invariants(&h, &InvariantsArgs { family: Family::Srq, k: Indices::All, r: None });
        assert!(matches!(missing, Err(CliError::Usage(_))));
        let out_of_range = invariants(&h, &InvariantsArgs { family: Family::S, k: Indices::List(vec![9]), r: None });
        assert!(matches!(out_of_range, Err(CliError::Algebra(_))));
    }

    #[test]
    fn pfaffian_reports() {
        let skew = file(gen(GenKind::Skew, 4));
        let rep = pfaffian(&skew, None).unwrap();
        assert_eq!(rep.exit_code(), 0);
        assert_eq!(rep.identities[0].name, "pfaffian_squared");
        let mut four = gen(GenKind::Form, 4);
        four.p = 4;
        let rep = pfaffian(&file(four), None).unwrap();
        assert_eq!(rep.summary.conjectures, 1);
        assert!(rep.identities[0].detail.as_ref().unwrap().contains("ratio"));
        let mut odd = gen(GenKind::Form, 4);
        odd.p = 3;
        assert!(matches!(pfaffian(&file(odd), None), Err(CliError::Algebra(_))));
    }

    #[test]
    fn verify_small_suite() {
        let args = VerifyArgs {
            dims: vec![2, 3],
            seeds: vec![1],
            mode: Mode::Exact,
            only: None,
            inputs: Vec::new(),
        };
        let rep = verify(&args).unwrap();
        assert_eq!(rep.exit_code(), 0);
        assert!(rep.summary.checks > 100);
        let bad = VerifyArgs { only: Some("no_such_identity".into()), ..args };
        assert!(matches!(verify(&bad), Err(CliError::Usage(_))));
    }
}
