use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qhopf_core::algebra::{AlgebraJson, StructureAlgebra};
use qhopf_core::catalog::{build_book64, build_instance, build_taft, instance_specs};
use qhopf_core::groupcoh::{assoc_cocycle_aq, inflate, solve_coboundary};
use qhopf_core::hochschild::{cohomology_dims, self_bimodule, trivial_cohomology, RankMode};
use qhopf_core::quasihopf::{verify_axioms, DatumJson, QuasiHopfDatum, SCHEMA_VERSION};
use qhopf_core::semidirect::{
    build_semidirect, check_compat, check_power_condition, lemma32_check, match_pointed, untwist_to_hopf,
    SemidirectInput, SkewGen,
};
use qhopf_core::suite::{graded_iso, run_suite, SuiteOptions};
use qhopf_core::weylcheck::{self, P3Case, RootType};
use qhopf_core::QhError;

#[derive(Parser)]
#[command(name = "qhopf", version, about = "Construct and verify finite-dimensional quasi-Hopf algebras")]
struct Cli {
    /// Render a plain-text table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the catalog instance specs.
    List,
    /// Build an instance and check every axiom.
    Verify(Source),
    /// Radical filtration dimensions and the associated graded comparison.
    Radical(Source),
    /// Semidirect product C[g]⋉H / (gⁿ − a) with g = S², optionally untwisted to a Hopf algebra.
    Semidirect {
        #[command(flatten)]
        src: Source,
        /// Exponent n with gⁿ = Ad(a).
        #[arg(long)]
        n: Option<usize>,
        /// Basis index of the grouplike a.
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        untwist: bool,
    },
    /// Hochschild cohomology dimensions.
    Hochschild {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value = "trivial")]
        coeff: Coeff,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// Overrides QHOPF_PRIME_SEED.
        #[arg(long)]
        prime_seed: Option<u64>,
    },
    /// Weyl group tables and the vanishing check.
    Weyl {
        #[arg(long = "type")]
        kind: Option<String>,
        #[arg(long, conflicts_with_all = ["p", "d"])]
        pmax: Option<u64>,
        #[arg(long, requires = "d")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        d: Option<u64>,
        /// p = 3 invariant count for A2, A2xA1 or A2xA2.
        #[arg(long, conflicts_with_all = ["kind", "pmax", "p"])]
        p3: Option<String>,
        #[arg(long)]
        f: Option<u64>,
        #[arg(long)]
        csv: bool,
    },
    /// The associator cocycle of A(q) and its coboundary solver.
    Groupcoh {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long)]
        solve: bool,
        /// Inflate to Z_m before solving.
        #[arg(long)]
        inflate: Option<usize>,
    },
    /// Write an instance to a JSON datum file.
    Export {
        spec: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run every acceptance criterion.
    PaperSuite {
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        prime_seed: Option<u64>,
    },
}

#[derive(clap::Args)]
struct Source {
    /// Instance spec such as "Aq:n=2,r=1", "H32" or "dual:taft:N=4,r=1".
    spec: Option<String>,
    #[arg(long, conflicts_with = "spec")]
    from_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    Trivial,
    #[value(name = "self")]
    SelfBimodule,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Modular,
}

enum Failure {
    Input(String, String),
    Run(QhError),
}

impl From<QhError> for Failure {
    fn from(e: QhError) -> Self {
        match e {
            QhError::Parse(_) | QhError::BadParameter(_) | QhError::BadCase(_) | QhError::NotPrimitive(_) => {
                Failure::Input(e.code().into(), e.to_string())
            }
            e => Failure::Run(e),
        }
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input("BAD_INPUT".into(), msg.into())
}

type Outcome = Result<(bool, Value), Failure>;

enum Loaded {
    Datum(QuasiHopfDatum),
    Algebra(StructureAlgebra),
}

impl Source {
    fn label(&self) -> String {
        match (&self.spec, &self.from_file) {
            (Some(s), _) => s.clone(),
            (None, Some(p)) => p.display().to_string(),
            _ => String::new(),
        }
    }

    fn load(&self) -> Result<Loaded, Failure> {
        match (&self.spec, &self.from_file) {
            (Some(s), _) => Ok(Loaded::Datum(build_instance(s)?)),
            (None, Some(p)) => {
                let text = std::fs::read_to_string(p).map_err(|e| input(format!("{}: {e}", p.display())))?;
                if let Ok(d) = serde_json::from_str::<DatumJson>(&text) {
                    return Ok(Loaded::Datum(QuasiHopfDatum::from_json(d)?));
                }
                let a: AlgebraJson = serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", p.display())))?;
                Ok(Loaded::Algebra(StructureAlgebra::from_json(a)?))
            }
            (None, None) => Err(input("give an instance spec or --from-file")),
        }
    }

    fn datum(&self) -> Result<QuasiHopfDatum, Failure> {
        match self.load()? {
            Loaded::Datum(d) => Ok(d),
            Loaded::Algebra(_) => Err(input("this command needs a full datum, not just an algebra")),
        }
    }

    fn algebra(&self) -> Result<StructureAlgebra, Failure> {
        Ok(match self.load()? {
            Loaded::Datum(d) => d.alg,
            Loaded::Algebra(a) => a,
        })
    }
}

fn prime_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("QHOPF_PRIME_SEED").ok().and_then(|s| s.parse().ok())).unwrap_or(0)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn cmd_verify(src: &Source) -> Outcome {
    let q = src.datum()?;
    let rep = verify_axioms(&q);
    let pass = rep.all_pass();
    Ok((pass, json!({ "instance": src.label(), "dim": q.dim(), "level": q.level(), "axioms": to_value(&rep), "pass": pass })))
}

fn cmd_radical(src: &Source) -> Outcome {
    let alg = src.algebra()?;
    let filt = alg.radical_filtration();
    let dims: Vec<usize> = filt.iter().map(|f| f.len()).collect();
    let codim = alg.dim - dims.get(1).copied().unwrap_or(0);
    let gr = alg.grading.is_some().then(|| graded_iso(&alg));
    Ok((true, json!({ "instance": src.label(), "dim": alg.dim, "filtration_dims": dims, "radical_codim": codim, "gr_isomorphic": gr })))
}

/// Known pipelines: (n, a index, target, grouplike index in target, skew generators).
fn pipeline_defaults(spec: &str) -> Option<(usize, usize, QuasiHopfDatum, usize, Vec<SkewGen>)> {
    if spec.trim() == "H32" {
        let skews = vec![SkewGen { index: 4, l: 0, r: 1 }, SkewGen { index: 1, l: 3, r: 0 }];
        return Some((2, 16, build_book64().ok()?, 16, skews));
    }
    let rest = spec.strip_prefix("Aq:")?;
    let mut n = None;
    let mut r = None;
    for part in rest.split(',') {
        match part.split_once('=')? {
            ("n", v) => n = v.trim().parse::<usize>().ok(),
            ("r", v) => r = v.trim().parse::<i64>().ok(),
            _ => {}
        }
    }
    let (n, r) = (n?, r?);
    Some((n, n * n, build_taft(n * n, r).ok()?, n * n, vec![SkewGen { index: 1, l: 0, r: 1 }]))
}

fn cmd_semidirect(src: &Source, n: Option<usize>, a: Option<usize>, untwist: bool) -> Outcome {
    let q = src.datum()?;
    let defaults = src.spec.as_deref().and_then(pipeline_defaults);
    let n = n.or(defaults.as_ref().map(|d| d.0)).ok_or_else(|| input("--n is required for this instance"))?;
    let ai = a.or(defaults.as_ref().map(|d| d.1)).ok_or_else(|| input("--a is required for this instance"))?;
    if ai >= q.dim() {
        return Err(input(format!("--a {ai} is out of range")));
    }
    let inp = SemidirectInput::antipode_square(q.clone(), n, q.alg.basis(ai));
    let compat = check_compat(&inp);
    let power = check_power_condition(&inp);
    let mut out = json!({ "instance": src.label(), "n": n, "a": ai, "compat": to_value(&compat) });
    out["power_condition"] = match &power {
        Ok(b) => json!(b),
        Err(e) => json!({ "error": e.code() }),
    };
    out["lemma32"] = json!(lemma32_check(&inp).ok());
    let (ht, g) = build_semidirect(&inp)?;
    let rep = verify_axioms(&ht);
    let mut pass = compat.pass() && rep.all_pass();
    out["dim"] = json!(ht.dim());
    out["axioms"] = to_value(&rep);
    if untwist {
        let un = untwist_to_hopf(&ht, &g)?;
        let h0_ok = un.h0.is_hopf() && verify_axioms(&un.h0).all_pass();
        pass &= h0_ok;
        out["h0_is_hopf"] = json!(h0_ok);
        out["cochain"] = to_value(&un.cochain);
        out["isomorphic_to_target"] = match defaults {
            Some((_, _, target, gl, skews)) => {
                let iso = match_pointed(&target, gl, &skews, &un.h0, &g)?.is_some();
                pass &= iso;
                json!(iso)
            }
            None => Value::Null,
        };
    }
    out["pass"] = json!(pass);
    Ok((pass, out))
}

fn cmd_hochschild(src: &Source, coeff: Coeff, kmax: usize, mode: Mode, trials: usize, seed: Option<u64>) -> Outcome {
    if kmax > 4 {
        return Err(input("kmax above 4 is beyond desk scale"));
    }
    let mode = match mode {
        Mode::Exact => RankMode::Exact,
        Mode::Modular => RankMode::Modular { trials, seed: prime_seed(seed) },
    };
    let rep = match coeff {
        Coeff::Trivial => trivial_cohomology(&src.datum()?, kmax, &mode)?,
        Coeff::SelfBimodule => {
            let alg = src.algebra()?;
            cohomology_dims(&alg, None, &self_bimodule(&alg), kmax, &mode)?
        }
    };
    let ok = rep.euler_consistent && rep.consensus;
    Ok((ok, json!({ "instance": src.label(), "dims": rep.dims(), "report": to_value(&rep) })))
}

fn cmd_weyl(kind: Option<String>, pmax: Option<u64>, p: Option<u64>, d: Option<u64>, p3: Option<String>, f: Option<u64>) -> Outcome {
    if let Some(case) = p3 {
        let case: P3Case = case.parse()?;
        let rep = weylcheck::p3_invariants(case, f)?;
        let kill = rep.dimension == 0 || weylcheck::spectral_kill_check(case);
        return Ok((kill, json!({ "p3": to_value(&rep), "spectral_kill": kill })));
    }
    let kind: RootType = kind.ok_or_else(|| input("--type is required"))?.parse()?;
    let reps = match (p, d) {
        (Some(p), Some(d)) => vec![weylcheck::verify_vanishing(kind, p, d)?],
        _ => weylcheck::sweep(kind, pmax.unwrap_or(200))?,
    };
    let pass = reps.iter().all(|r| r.pass);
    Ok((pass, json!({ "type": kind.to_string(), "cases": to_value(&reps), "pass": pass })))
}

fn cmd_groupcoh(n: usize, r: i64, solve: bool, infl: Option<usize>) -> Outcome {
    let w = assoc_cocycle_aq(n, r)?;
    let mut out = json!({ "n": n, "r": r, "omega": to_value(&w), "is_cocycle": w.is_cocycle() });
    let target = match infl {
        Some(m) => {
            let iw = inflate(&w, m)?;
            out["inflated"] = to_value(&iw);
            iw
        }
        None => w,
    };
    if solve {
        let c = solve_coboundary(&target)?;
        out["coboundary"] = json!(c.is_some());
        out["solution"] = to_value(&c);
    }
    Ok((true, out))
}

fn render_table(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if x.is_object() || x.as_array().is_some_and(|a| a.iter().any(|e| e.is_object())) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_table(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {x}\n"));
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                render_table(x, indent, out);
                out.push_str(&format!("{pad}--\n"));
            }
        }
        x => out.push_str(&format!("{pad}{x}\n")),
    }
}

fn weyl_csv(v: &Value) -> String {
    let mut s = String::from("type,p,d,word,gamma_m,gamma_n,exponent\n");
    let kind = v["type"].as_str().unwrap_or("");
    for c in v["cases"].as_array().into_iter().flatten() {
        for row in c["length3"].as_array().into_iter().flatten() {
            let g = &row["gamma"];
            s.push_str(&format!("{kind},{},{},{},{},{},{}\n", c["p"], c["d"], row["word"].as_str().unwrap_or(""), g[0], g[1], row["exponent"]));
        }
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut csv = false;
    let outcome = match cli.cmd {
        Cmd::List => Ok((true, json!({ "instances": instance_specs() }))),
        Cmd::Verify(src) => cmd_verify(&src),
        Cmd::Radical(src) => cmd_radical(&src),
        Cmd::Semidirect { src, n, a, untwist } => cmd_semidirect(&src, n, a, untwist),
        Cmd::Hochschild { src, coeff, kmax, mode, trials, prime_seed } => cmd_hochschild(&src, coeff, kmax, mode, trials, prime_seed),
        Cmd::Weyl { kind, pmax, p, d, p3, f, csv: c } => {
            csv = c;
            cmd_weyl(kind, pmax, p, d, p3, f)
        }
        Cmd::Groupcoh { n, r, solve, inflate } => cmd_groupcoh(n, r, solve, inflate),
        Cmd::Export { spec, out } => build_instance(&spec).map_err(Failure::from).and_then(|q| {
            let text = serde_json::to_string_pretty(&q.to_json()).expect("datum serializes");
            match out {
                Some(p) => std::fs::write(&p, text)
                    .map(|_| (true, json!({ "written": p.display().to_string() })))
                    .map_err(|e| input(format!("{}: {e}", p.display()))),
                None => Ok((true, serde_json::from_str(&text).expect("round trip"))),
            }
        }),
        Cmd::PaperSuite { extended, prime_seed: s } => {
            let rep = run_suite(&SuiteOptions { prime_seed: prime_seed(s), extended });
            Ok((rep.pass, to_value(&rep)))
        }
    };
    let (code, mut body) = match outcome {
        Ok((pass, body)) => (u8::from(!pass), body),
        Err(Failure::Input(kind, message)) => (2, json!({ "error": { "kind": kind, "message": message } })),
        Err(Failure::Run(e)) => (1, json!({ "error": { "kind": e.code(), "message": e.to_string() } })),
    };
    if let Value::Object(m) = &mut body {
        m.entry("schema_version").or_insert(json!(SCHEMA_VERSION));
    }
    let text = if csv && code == 0 {
        weyl_csv(&body)
    } else if cli.table {
        let mut s = String::new();
        render_table(&body, 0, &mut s);
        s
    } else {
        serde_json::to_string_pretty(&body).expect("report serializes") + "\n"
    };
    let _ = std::io::stdout().write_all(text.as_bytes());
    ExitCode::from(code)
}
