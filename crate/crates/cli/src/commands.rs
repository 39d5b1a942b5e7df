use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use kres_core::grothendieck::{
    grid_points, ktype_mult_complex, ktype_mult_real, restriction_hom, spherical_ktype_crosscheck,
    verify_infchar_compat, verify_translation_commutes, Convention, Grid, RealPSParam,
    StandardClass,
};
use kres_core::koszulhomology::{
    build_koszul_complex, build_module, chain_euler_characteristic, euler_characteristic, homology,
    homology_in_degree,
};
use kres_core::ktheory::verify_split_proposition;
use kres_core::pairdata::{box_weights, Catalog};
use kres_core::{Error, RationalWeight, SymmetricPairData, Weight};
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::cache::Cache;
use crate::encode;
use crate::{ConventionArg, SideArg, Suite};

const SCHEMA_VERSION: u64 = 1;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
    Io(std::io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 2,
            Failure::Core(e) => match e {
                Error::TruncationTooSmall { .. } => 3,
                Error::NotSplit(_) | Error::UnsupportedPair(_) | Error::CorruptCatalog { .. } => 4,
                _ => 2,
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

pub struct Outcome {
    document: Value,
    exit: u8,
    out: Option<PathBuf>,
}

impl Outcome {
    pub fn with_out(mut self, out: Option<PathBuf>) -> Self {
        self.out = out;
        self
    }

    /// Prints the document and writes the report file; returns the exit code.
    pub fn emit(self) -> Result<u8, Failure> {
        let mut text = serde_json::to_string_pretty(&self.document).expect("JSON values serialize");
        text.push('\n');
        if let Some(path) = &self.out {
            std::fs::write(path, &text).map_err(Failure::Io)?;
        }
        print!("{text}");
        Ok(self.exit)
    }
}

fn document(echo: Map<String, Value>, payload: Value, exit: u8) -> Outcome {
    Outcome {
        document: json!({ "schema_version": SCHEMA_VERSION, "config_echo": Value::Object(echo), "payload": payload }),
        exit,
        out: None,
    }
}

fn convention(c: ConventionArg) -> Convention {
    match c {
        ConventionArg::HalfSum => Convention::HalfSum,
        ConventionArg::Nu => Convention::Nu,
    }
}

fn parse_components(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim)
}

fn parse_lambda(s: Option<&str>, rank: usize) -> Result<Weight, Failure> {
    let Some(s) = s else {
        return Ok(Weight::zero(rank));
    };
    let v = parse_components(s)
        .map(|c| {
            c.parse::<i64>()
                .map_err(|_| Failure::Usage(format!("malformed integer `{c}` in `{s}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != rank {
        return Err(Failure::Usage(format!(
            "expected {rank} coordinates, got `{s}`"
        )));
    }
    Ok(Weight(v))
}

fn parse_nu(s: Option<&str>, rank: usize) -> Result<RationalWeight, Failure> {
    let Some(s) = s else {
        return Ok(RationalWeight::zero(rank));
    };
    let v = parse_components(s)
        .map(|c| {
            BigRational::from_str(c)
                .map_err(|_| Failure::Usage(format!("malformed rational `{c}` in `{s}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != rank {
        return Err(Failure::Usage(format!(
            "expected {rank} coordinates, got `{s}`"
        )));
    }
    Ok(RationalWeight(v))
}

fn echo(command: &str, pair: Option<&str>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    if let Some(p) = pair {
        m.insert("pair".into(), json!(p));
    }
    m
}

/// Default (degree, bound) for the graded suites.
fn graded_defaults(pair: &SymmetricPairData) -> (usize, i64) {
    match pair.name.as_str() {
        "sl2r" => (16, 10),
        "sl3r" => (14, 6),
        _ => (10, 4),
    }
}

pub struct Context {
    catalog: Catalog,
    cache: Cache,
}

impl Context {
    pub fn new(dir: Option<&Path>) -> Result<Self, Failure> {
        let catalog = match dir {
            Some(d) => Catalog::from_dir(d).map_err(Failure::Io)?,
            None => Catalog::builtin(),
        };
        Ok(Context {
            catalog,
            cache: Cache::from_env(),
        })
    }

    fn pair(&self, name: &str) -> Result<SymmetricPairData, Failure> {
        Ok(self.catalog.load(name)?)
    }

    /// Cached computation of a payload; the key covers the pair document, the
    /// operation and its resolved parameters.
    fn cached(
        &self,
        pair: &str,
        op: &str,
        params: &Map<String, Value>,
        f: impl FnOnce() -> Result<Value, Failure>,
    ) -> Result<Value, Failure> {
        let doc = self.catalog.document(pair).unwrap_or_default();
        let key = json!({
            "schema_version": SCHEMA_VERSION,
            "pair": pair,
            "pair_document": hex::encode(Sha256::digest(doc.as_bytes())),
            "op": op,
            "params": params,
        });
        self.cache.get_or_compute(&key, f)
    }

    pub fn rmap(
        &self,
        name: &str,
        lambda: Option<&str>,
        nu: Option<&str>,
        conv: ConventionArg,
    ) -> Result<Outcome, Failure> {
        let pair = self.pair(name)?;
        let rank = pair.g_datum.rank();
        let (lambda, nu) = (parse_lambda(lambda, rank)?, parse_nu(nu, rank)?);
        let conv = convention(conv);
        let mut e = echo("rmap", Some(name));
        e.insert("lambda".into(), encode::weight(&lambda));
        e.insert("nu".into(), encode::rational_weight(&nu));
        e.insert("convention".into(), json!(conv.as_str()));
        let payload = self.cached(name, "rmap", &e, || {
            let x = StandardClass::complex(&pair.g_datum, lambda.clone(), nu.clone());
            let image = restriction_hom(&pair, &x, conv)?;
            Ok(json!({ "input": encode::standard_class(&x), "image": encode::standard_class(&image) }))
        })?;
        Ok(document(e, payload, 0))
    }

    pub fn ktypes(
        &self,
        name: &str,
        side: SideArg,
        lambda: Option<&str>,
        nu: Option<&str>,
        bound: i64,
    ) -> Result<Outcome, Failure> {
        let pair = self.pair(name)?;
        if bound < 0 {
            return Err(Failure::Usage("bound must be non-negative".into()));
        }
        let rank = pair.g_datum.rank();
        let (lambda, nu) = (parse_lambda(lambda, rank)?, parse_nu(nu, rank)?);
        let mut e = echo("ktypes", Some(name));
        e.insert(
            "side".into(),
            json!(if side == SideArg::Complex {
                "complex"
            } else {
                "real"
            }),
        );
        e.insert("lambda".into(), encode::weight(&lambda));
        e.insert("nu".into(), encode::rational_weight(&nu));
        e.insert("bound".into(), json!(bound));
        let payload = self.cached(name, "ktypes", &e, || {
            let mut table = Vec::new();
            match side {
                SideArg::Complex => {
                    let rd = &pair.g_datum;
                    for tau in box_weights(rank, bound)
                        .into_iter()
                        .filter(|t| rd.is_dominant(t))
                    {
                        let m = ktype_mult_complex(&pair, &lambda, &tau)?;
                        if m != 0 {
                            table.push(json!({ "tau": encode::weight(&tau), "mult": m }));
                        }
                    }
                }
                SideArg::Real => {
                    let p = RealPSParam::new(&lambda, nu.clone());
                    for tau in pair.k_types_up_to(bound) {
                        let m = ktype_mult_real(&pair, &p, &tau)?;
                        if m != 0 {
                            table.push(json!({ "tau": encode::weight(&tau), "mult": m }));
                        }
                    }
                }
            }
            Ok(json!({ "table": table }))
        })?;
        Ok(document(e, payload, 0))
    }

    pub fn verify(
        &self,
        name: &str,
        suite: Suite,
        degree: Option<usize>,
        bound: Option<i64>,
        conv: ConventionArg,
    ) -> Result<Outcome, Failure> {
        let pair = self.pair(name)?;
        let suite_name = match suite {
            Suite::SplitProp => "split-prop",
            Suite::KoszulKtypes => "koszul-ktypes",
            Suite::Translation => "translation",
            Suite::Infchar => "infchar",
            Suite::Homology => "homology",
        };
        let mut e = echo("verify", Some(name));
        e.insert("suite".into(), json!(suite_name));
        let (default_degree, default_bound) = graded_defaults(&pair);
        let conv = convention(conv);
        if bound.is_some_and(|b| b < 0) {
            return Err(Failure::Usage("bound must be non-negative".into()));
        }
        let payload = match suite {
            Suite::SplitProp | Suite::KoszulKtypes => {
                let degree = degree.unwrap_or(default_degree);
                let bound = bound.unwrap_or(default_bound);
                if degree < pair.dim_k() {
                    return Err(Error::TruncationTooSmall { degree, tau: None }.into());
                }
                e.insert("degree".into(), json!(degree));
                e.insert("bound".into(), json!(bound));
                if suite == Suite::SplitProp {
                    self.cached(name, suite_name, &e, || split_prop(&pair, degree, bound))?
                } else {
                    self.cached(name, suite_name, &e, || spherical(&pair, degree, bound))?
                }
            }
            Suite::Translation | Suite::Infchar => {
                let bound = bound.unwrap_or(6);
                e.insert("bound".into(), json!(bound));
                e.insert("convention".into(), json!(conv.as_str()));
                if suite == Suite::Translation {
                    self.cached(name, suite_name, &e, || translation(&pair, bound, conv))?
                } else {
                    self.cached(name, suite_name, &e, || infchar(&pair, bound, conv))?
                }
            }
            Suite::Homology => {
                let bound = bound.unwrap_or(if pair.dim_k() > 1 { 2 } else { 4 });
                e.insert("bound".into(), json!(bound));
                self.cached(name, suite_name, &e, || homology_suite(&pair, bound))?
            }
        };
        let passed = payload
            .get("passed")
            .and_then(Value::as_bool)
            .unwrap_or(false);
        Ok(document(e, payload, if passed { 0 } else { 1 }))
    }

    pub fn koszul(&self, name: &str, a: i64, b: i64) -> Result<Outcome, Failure> {
        let pair = self.pair(name)?;
        if a < 0 || b < 0 {
            return Err(Failure::Usage(
                "module highest weights must be non-negative".into(),
            ));
        }
        let mut e = echo("koszul", Some(name));
        e.insert("a".into(), json!(a));
        e.insert("b".into(), json!(b));
        let payload = self.cached(name, "koszul", &e, || {
            let m = build_module(&pair, &Weight(vec![a]), &Weight(vec![b]))?;
            let c = build_koszul_complex(&m);
            let hs = homology(&pair, &c);
            Ok(json!({
                "module_dim": m.dim,
                "dims": hs.iter().map(|h| h.dimension(&pair.k_datum)).collect::<Vec<_>>(),
                "homology": hs.iter().map(encode::character).collect::<Vec<_>>(),
                "euler_characteristic": encode::character(&euler_characteristic(&pair, &m)),
            }))
        })?;
        Ok(document(e, payload, 0))
    }

    pub fn catalog(&self) -> Result<Outcome, Failure> {
        let rows = self.catalog.list()?;
        let pairs: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "g_type": r.g_type.as_str(),
                    "k_type": r.k_type.as_str(),
                    "split": r.split,
                    "dim_g": r.dim_g,
                    "dim_k": r.dim_k,
                    "dim_p": r.dim_p,
                    "m_rank": r.m_rank,
                })
            })
            .collect();
        Ok(document(
            echo("catalog", None),
            json!({ "pairs": pairs }),
            0,
        ))
    }
}

fn split_prop(pair: &SymmetricPairData, degree: usize, bound: i64) -> Result<Value, Failure> {
    let r = verify_split_proposition(pair, degree, bound)?;
    let mismatches: Vec<Value> = r
        .mismatches
        .iter()
        .map(|m| json!({ "tau": encode::weight(&m.tau), "degree": m.degree, "lhs": m.lhs, "rhs": m.rhs }))
        .collect();
    Ok(json!({
        "passed": r.passed(),
        "window": r.window,
        "ktypes_checked": r.ktypes_checked,
        "mismatches": mismatches,
        "summary": format!("{} mismatches over {} K-types in degrees 0..={}", r.mismatches.len(), r.ktypes_checked, r.window),
    }))
}

fn spherical(pair: &SymmetricPairData, degree: usize, bound: i64) -> Result<Value, Failure> {
    let r = spherical_ktype_crosscheck(pair, bound, degree)?;
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "tau": encode::weight(&row.tau),
                "frobenius": row.frobenius,
                "theta_cone": row.theta_cone,
                "complex_cone": row.complex_cone,
                "agrees": row.agrees(),
            })
        })
        .collect();
    let bad = r.mismatches().len();
    Ok(json!({
        "passed": bad == 0,
        "rows": rows,
        "summary": format!("{bad} disagreeing K-types out of {}", r.rows.len()),
    }))
}

fn translation(pair: &SymmetricPairData, bound: i64, conv: Convention) -> Result<Value, Failure> {
    let grid = Grid::standard(&pair.g_datum, bound);
    let r = verify_translation_commutes(pair, &grid, conv)?;
    let mismatches: Vec<Value> = r
        .mismatches
        .iter()
        .map(|m| {
            json!({
                "lambda": encode::weight(&m.lambda),
                "nu": encode::rational_weight(&m.nu),
                "epsilon": encode::weight(&m.epsilon),
                "lhs": encode::standard_class(&m.lhs),
                "rhs": encode::standard_class(&m.rhs),
            })
        })
        .collect();
    Ok(json!({
        "passed": r.mismatches.is_empty(),
        "points_checked": r.points_checked,
        "mismatches": mismatches,
        "summary": format!("{} mismatches over {} grid points", r.mismatches.len(), r.points_checked),
    }))
}

fn infchar(pair: &SymmetricPairData, bound: i64, conv: Convention) -> Result<Value, Failure> {
    let grid = Grid::standard(&pair.g_datum, bound);
    let r = verify_infchar_compat(pair, &grid_points(&grid), conv)?;
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            json!({
                "lambda": encode::weight(&f.lambda),
                "nu": encode::rational_weight(&f.nu),
                "real": encode::rational_weight(&f.real),
                "complex_left": encode::rational_weight(&f.complex_left),
            })
        })
        .collect();
    Ok(json!({
        "passed": r.failures.is_empty(),
        "points_checked": r.points_checked,
        "failures": failures,
        "summary": format!("{} failures over {} points", r.failures.len(), r.points_checked),
    }))
}

fn homology_suite(pair: &SymmetricPairData, bound: i64) -> Result<Value, Failure> {
    let mut modules = Vec::new();
    let mut passed = true;
    for a in 0..=bound {
        for b in 0..=bound {
            let m = build_module(pair, &Weight(vec![a]), &Weight(vec![b]))?;
            let c = build_koszul_complex(&m);
            let hs = homology(pair, &c);
            let d_squared_zero = c.d_squared_is_zero();
            let vanishing =
                (c.k_dim + 1..c.k_dim + 3).all(|n| homology_in_degree(pair, &c, n).is_empty());
            let euler = euler_characteristic(pair, &m) == chain_euler_characteristic(pair, &m);
            let ok =
                m.brackets_hold() && d_squared_zero && c.is_k_equivariant() && vanishing && euler;
            passed &= ok;
            modules.push(json!({
                "a": a,
                "b": b,
                "dims": hs.iter().map(|h| h.dimension(&pair.k_datum)).collect::<Vec<_>>(),
                "d_squared_zero": d_squared_zero,
                "vanishing_above_dim_k": vanishing,
                "euler_matches_chains": euler,
                "ok": ok,
            }));
        }
    }
    let bad = modules.iter().filter(|m| m["ok"] != true).count();
    let summary = format!("{bad} failing modules out of {}", modules.len());
    Ok(json!({ "passed": passed, "modules": modules, "summary": summary }))
}
