//! Argument parsing and dispatch.

use std::collections::BTreeMap;

use clap::{ArgGroup, Args, Parser, Subcommand};
use homlines_core::chow::{self, GradedQuotientRing, Preset, VanishingCase};
use homlines_core::marked::{self, line_family_report};
use homlines_core::tangent::{splitting_type_general, tag, weights};
use homlines_core::thresholds::{
    classify_vmrt, factor_value, gm_bound, nu, nu_at, semistability_necessary, slope,
    uniform_verdict, GapBound, SplittingProfile, Threshold, Verdict,
};
use homlines_core::{positive_roots, CaseTag, ProductSpace};
use serde_json::{json, Value};

use crate::report::{Format, Report};
use crate::spec::{format_factor, format_space, parse_space};
use crate::tables::{emit_tables, Which};
use crate::{selftest, CliError};

#[derive(Debug, Parser)]
#[command(name = "homlines", version, about = "Lines, tangent splitting types and uniform-bundle thresholds on rational homogeneous spaces")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SpaceArg {
    /// e.g. "B5/P{2,4} x A3/P{1}" or "G2/B"
    #[arg(long)]
    space: String,
}

#[derive(Debug, Args)]
struct Target {
    #[command(flatten)]
    space: SpaceArg,
    /// 1-based factor index
    #[arg(long)]
    factor: Option<usize>,
    /// marked node of that factor; may be omitted when only one node is marked
    #[arg(long)]
    delta: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cartan matrices and positive roots of each factor
    Roots(SpaceArg),
    /// Line families: case, special and universal families, VMRT, thresholds
    Lines(Target),
    /// VMRT factors with their classification
    Vmrt(Target),
    /// Tag, weights and splitting type of the relative tangent bundle on a line
    Tangent(Target),
    /// Threshold of the generalized Grassmannian behind one marked node
    Varsigma(Target),
    /// Minimum threshold over all marked nodes
    Nu(SpaceArg),
    /// Grauert-Mulich style gap bound for one family of lines
    GmBound(Target),
    /// Decide splitting from splitting profiles on each family of lines
    Verdict {
        #[command(flatten)]
        space: SpaceArg,
        /// bundle rank; defaults to the length of the profiles
        #[arg(long)]
        rank: Option<usize>,
        /// "a1,a2,..." for every family, or "i:delta=a1,..." / "delta=a1,..." for one
        #[arg(long = "profile", required = true, allow_hyphen_values = true)]
        profiles: Vec<String>,
        /// factor used by "delta=..." profiles
        #[arg(long, default_value_t = 1)]
        factor: usize,
    },
    /// Chow-ring computations
    Chow(ChowArgs),
    /// Regenerate a reference table
    Tables {
        #[arg(long, value_enum)]
        which: Which,
        /// rank at which the classical columns are instantiated
        #[arg(long, default_value_t = 5)]
        rank: usize,
    },
    /// Run every internal consistency and oracle check
    Selftest,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("what").required(true).args(["ring", "case", "lemma31"])))]
struct ChowArgs {
    /// E6P6, E7P7, C3P3, QuadricEven(m), Spinor(n), Grassmannian(d,n)
    #[arg(long)]
    ring: Option<String>,
    /// restrict a ring report to one degree
    #[arg(long, requires = "ring")]
    degree: Option<u32>,
    /// E6P6-t4, E6P6-t5, E7P7-t5, E7P7-t6
    #[arg(long)]
    case: Option<String>,
    /// "d,n,t"
    #[arg(long)]
    lemma31: Option<String>,
}

/// What a run produced: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(report) => Outcome {
            code: 0,
            stdout: report.render(cli.format),
            stderr: String::new(),
        },
        Err((report, e)) => Outcome {
            code: e.exit_code(),
            stdout: report.map(|r| r.render(cli.format)).unwrap_or_default(),
            stderr: format!("error: {e}\n"),
        },
    }
}

type Res<T> = Result<T, CliError>;

fn dispatch(cmd: Command) -> Result<Report, (Option<Report>, CliError)> {
    let plain = |r: Res<Value>| r.map(Report::new).map_err(|e| (None, e));
    match cmd {
        Command::Roots(s) => plain(roots(&s.space)),
        Command::Lines(t) => plain(lines(&t)),
        Command::Vmrt(t) => plain(with_target(&t, vmrt_doc)),
        Command::Tangent(t) => plain(with_target(&t, tangent_doc)),
        Command::Varsigma(t) => plain(with_target(&t, varsigma_doc)),
        Command::Nu(s) => plain(nu_doc(&s.space)),
        Command::GmBound(t) => plain(with_target(&t, |x, i, d| Ok(gm_json(&gm_bound(x, i, d)?)))),
        Command::Verdict { space, rank, profiles, factor } => plain(verdict(&space.space, rank, &profiles, factor)),
        Command::Chow(c) => plain(chow_doc(&c)),
        Command::Tables { which, rank } => emit_tables(which, rank).map_err(|e| (None, e)),
        Command::Selftest => {
            let (report, failed) = selftest::run();
            if failed == 0 {
                Ok(report)
            } else {
                Err((Some(report), CliError::SelftestFailed(failed)))
            }
        }
    }
}

fn space_of(text: &str) -> Res<ProductSpace> {
    Ok(parse_space(text)?.space)
}

/// Resolves `--factor/--delta`, defaulting when exactly one node qualifies.
fn resolve(x: &ProductSpace, factor: Option<usize>, delta: Option<usize>) -> Res<(usize, usize)> {
    let i = factor.unwrap_or(1);
    x.factor(i)?;
    if let Some(d) = delta {
        return Ok((i, d));
    }
    let pairs: Vec<_> = x
        .marked_pairs()
        .into_iter()
        .filter(|&(j, _)| factor.is_none_or(|f| f == j))
        .collect();
    match pairs.as_slice() {
        [p] => Ok(*p),
        _ => Err(CliError::Usage(format!(
            "{} has {} marked nodes to choose from; pass --delta (and --factor)",
            format_space(x),
            pairs.len()
        ))),
    }
}

fn with_target(t: &Target, f: impl Fn(&ProductSpace, usize, usize) -> Res<Value>) -> Res<Value> {
    let x = space_of(&t.space.space)?;
    let (i, d) = resolve(&x, t.factor, t.delta)?;
    f(&x, i, d)
}

fn threshold_json(t: Threshold) -> Value {
    json!(t.value)
}

fn gm_json(b: &GapBound) -> Value {
    json!({
        "paper": b.paper_threshold,
        "computed": b.computed_threshold,
        "gap": b.max_semistable_gap,
    })
}

fn case_name(c: CaseTag) -> &'static str {
    match c {
        CaseTag::I => "I",
        CaseTag::II => "II",
    }
}

fn roots(text: &str) -> Res<Value> {
    let x = space_of(text)?;
    let factors: Vec<Value> = x
        .factors()
        .iter()
        .map(|f| {
            let d = f.diagram();
            let cartan: Vec<Vec<i32>> = d.cartan_matrix().rows().map(<[i32]>::to_vec).collect();
            let rs: Vec<String> = positive_roots(d).iter().map(|r| r.to_string()).collect();
            let short: Vec<usize> = d.nodes().filter(|&k| d.is_short(k)).collect();
            json!({
                "diagram": d.to_string(),
                "cartan": cartan,
                "count": rs.len(),
                "roots": rs,
                "short": short,
            })
        })
        .collect();
    Ok(json!({"space": format_space(&x), "factors": factors}))
}

fn family_json(x: &ProductSpace, i: usize, d: usize, nu_all: Threshold) -> Res<Value> {
    let r = line_family_report(x, i, d)?;
    let splitting = match r.case {
        CaseTag::I => Value::Null,
        CaseTag::II => json!(splitting_type_general(x, i, d)?.degrees()),
    };
    let vs = nu_at(x, i, d)?;
    Ok(json!({
        "space": format_space(x),
        "delta": [i, d],
        "case": case_name(r.case),
        "M": format_space(&r.m),
        "U": format_space(&r.u),
        "vmrt": r.vmrt.iter().map(format_factor).collect::<Vec<_>>(),
        "gdelta": format_factor(&r.gdelta),
        "exposedShort": r.exposed_short,
        "splitting": splitting,
        "varsigma": threshold_json(vs),
        "p1Fallback": vs.p1_fallback,
        "nu": threshold_json(nu_all),
        "gm": gm_json(&gm_bound(x, i, d)?),
    }))
}

fn lines(t: &Target) -> Res<Value> {
    let x = space_of(&t.space.space)?;
    let pairs = match (t.factor, t.delta) {
        (None, None) => x.marked_pairs(),
        _ => vec![resolve(&x, t.factor, t.delta)?],
    };
    let nu_all = nu(&x)?;
    let docs = pairs
        .into_iter()
        .map(|(i, d)| family_json(&x, i, d, nu_all))
        .collect::<Res<Vec<_>>>()?;
    Ok(Value::Array(docs))
}

fn vmrt_doc(x: &ProductSpace, i: usize, d: usize) -> Res<Value> {
    let factors = marked::vmrt(x, i, d)?
        .iter()
        .map(|f| {
            let fam = classify_vmrt(f)?;
            Ok(json!({
                "space": format_factor(f),
                "family": fam.to_string(),
                "varsigma": factor_value(fam).ok().map(threshold_json).unwrap_or(Value::Null),
            }))
        })
        .collect::<Res<Vec<_>>>()?;
    Ok(json!({
        "space": format_space(x),
        "delta": [i, d],
        "exposedShort": x.factor(i)?.is_exposed_short(d)?,
        "vmrt": factors,
    }))
}

fn tangent_doc(x: &ProductSpace, i: usize, d: usize) -> Res<Value> {
    let split = splitting_type_general(x, i, d)?;
    let g = marked::grassmannianization(x, i, d)?;
    let k = g.single_mark()?;
    let t = tag(g.diagram(), k)?;
    let w = weights(g.diagram(), k)?;
    let comps: Vec<Value> = t
        .per_component
        .iter()
        .zip(&w.per_component)
        .map(|(tc, wc)| {
            let c = &tc.component;
            let nodes: Vec<usize> = (1..=c.diagram.rank()).filter_map(|n| c.old_of(n)).collect();
            json!({
                "component": c.diagram.to_string(),
                "nodes": nodes,
                "adjacent": wc.adjacent,
                "tag": tc.values,
                "weights": wc.roots.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "space": format_space(x),
        "delta": [i, d],
        "gdelta": format_factor(&g),
        "components": comps,
        "splitting": split.degrees(),
        "blocks": split.to_string(),
        "rank": split.len(),
    }))
}

fn varsigma_doc(x: &ProductSpace, i: usize, d: usize) -> Res<Value> {
    let g = marked::grassmannianization(x, i, d)?;
    let t = nu_at(x, i, d)?;
    Ok(json!({
        "space": format_space(x),
        "delta": [i, d],
        "gdelta": format_factor(&g),
        "varsigma": threshold_json(t),
        "p1Fallback": t.p1_fallback,
    }))
}

fn nu_doc(text: &str) -> Res<Value> {
    let x = space_of(text)?;
    let nodes = x
        .marked_pairs()
        .into_iter()
        .map(|(i, d)| {
            let t = nu_at(&x, i, d)?;
            Ok(json!({
                "delta": [i, d],
                "gdelta": format_factor(&marked::grassmannianization(&x, i, d)?),
                "varsigma": threshold_json(t),
                "p1Fallback": t.p1_fallback,
            }))
        })
        .collect::<Res<Vec<_>>>()?;
    let t = nu(&x)?;
    Ok(json!({
        "space": format_space(&x),
        "nu": threshold_json(t),
        "p1Fallback": t.p1_fallback,
        "nodes": nodes,
    }))
}

fn parse_degrees(s: &str) -> Res<SplittingProfile> {
    let degrees = s
        .split(',')
        .map(|a| a.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad profile entry '{a}' in '{s}'"))))
        .collect::<Res<Vec<_>>>()?;
    Ok(SplittingProfile::new(degrees)?)
}

/// `a,b` for every family, `delta=a,b` or `i:delta=a,b` for one.
fn parse_profiles(x: &ProductSpace, specs: &[String], factor: usize) -> Res<BTreeMap<(usize, usize), SplittingProfile>> {
    let mut out = BTreeMap::new();
    for s in specs {
        match s.split_once('=') {
            None => {
                let p = parse_degrees(s)?;
                for pair in x.marked_pairs() {
                    out.insert(pair, p.clone());
                }
            }
            Some((key, degrees)) => {
                let bad = || CliError::Usage(format!("bad profile key '{key}'"));
                let (i, d) = match key.split_once(':') {
                    Some((i, d)) => (i.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
                    None => (factor, key.trim().parse().map_err(|_| bad())?),
                };
                if !x.factor(i)?.is_marked(d) {
                    return Err(CliError::Usage(format!("node {d} of factor {i} is not marked")));
                }
                out.insert((i, d), parse_degrees(degrees)?);
            }
        }
    }
    Ok(out)
}

fn verdict(text: &str, rank: Option<usize>, specs: &[String], factor: usize) -> Res<Value> {
    let x = space_of(text)?;
    let profiles = parse_profiles(&x, specs, factor)?;
    let r = match rank {
        Some(r) => r,
        None => profiles.values().next().map(SplittingProfile::rank).unwrap_or(0),
    };
    let v = uniform_verdict(r, &x, &profiles)?;
    let (name, unstable) = match &v {
        Verdict::SplitsAsLineBundles => ("splits", vec![]),
        Verdict::UnstableForSome(pairs) => ("unstable", pairs.clone()),
        Verdict::Inconclusive => ("inconclusive", vec![]),
    };
    let families = profiles
        .iter()
        .map(|(&(i, d), p)| {
            let b = gm_bound(&x, i, d)?;
            Ok(json!({
                "delta": [i, d],
                "profile": p.degrees(),
                "slope": slope(p).to_string(),
                "gm": gm_json(&b),
                "semistabilityNecessary": semistability_necessary(p, &b),
            }))
        })
        .collect::<Res<Vec<_>>>()?;
    Ok(json!({
        "space": format_space(&x),
        "rank": r,
        "nu": threshold_json(nu(&x)?),
        "verdict": name,
        "unstable": unstable,
        "families": families,
    }))
}

/// Accepts the preset display forms, case-insensitively, plus `G(d,n)`.
pub fn parse_preset(s: &str) -> Res<Preset> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
    let bad = || CliError::Usage(format!("unknown ring '{s}'"));
    let args = |prefix: &str| -> Option<Vec<u32>> {
        let inner = t.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
        inner.split(',').map(|a| a.parse().ok()).collect()
    };
    let preset = match t.as_str() {
        "e6p6" => Preset::E6P6,
        "e7p7" => Preset::E7P7,
        "c3p3" => Preset::C3P3,
        _ => {
            if let Some([m]) = args("quadriceven").as_deref() {
                Preset::QuadricEven(*m)
            } else if let Some([n]) = args("spinor").as_deref() {
                Preset::Spinor(*n)
            } else if let Some([d, n]) = args("grassmannian").or_else(|| args("g")).as_deref() {
                Preset::Grassmannian { d: *d, n: *n }
            } else {
                return Err(bad());
            }
        }
    };
    Ok(preset)
}

fn degree_json(ring: &GradedQuotientRing, t: u32) -> Res<Value> {
    let basis: Vec<String> = ring.basis(t)?.iter().map(|m| ring.render_monomial(m)).collect();
    Ok(json!({
        "degree": t,
        "dim": basis.len(),
        "basis": basis,
        "torsion": ring.torsion(t)?,
    }))
}

fn chow_doc(c: &ChowArgs) -> Res<Value> {
    if let Some(name) = &c.ring {
        let preset = parse_preset(name)?;
        let cap = c.degree.unwrap_or(preset.dimension());
        let ring = GradedQuotientRing::from_preset(preset, cap)?;
        let degrees = match c.degree {
            Some(t) => vec![degree_json(&ring, t)?],
            None => (0..=cap).map(|t| degree_json(&ring, t)).collect::<Res<_>>()?,
        };
        let generators: Vec<Value> = ring
            .generator_names()
            .iter()
            .zip(ring.generator_degrees())
            .map(|(n, d)| json!({"name": n, "degree": d}))
            .collect();
        let relations: Vec<String> = ring.relations().iter().map(|r| ring.render(r)).collect();
        return Ok(json!({
            "ring": preset.to_string(),
            "dimension": preset.dimension(),
            "generators": generators,
            "relations": relations,
            "degrees": degrees,
        }));
    }
    if let Some(name) = &c.case {
        let case = VanishingCase::parse(name).ok_or_else(|| CliError::Usage(format!("unknown case '{name}'")))?;
        let r = chow::verify_vanishing(case)?;
        let stages: Vec<Value> = r
            .stages
            .iter()
            .map(|s| {
                let constraints: Vec<Value> = s
                    .constraints
                    .iter()
                    .map(|k| json!({"degree": k.degree, "monomial": k.monomial, "poly": k.poly}))
                    .collect();
                json!({
                    "targets": s.targets,
                    "assumedZero": s.assumed_zero,
                    "pattern": format!("{:?}", s.pattern),
                    "hypothesis": s.hypothesis,
                    "constraints": constraints,
                })
            })
            .collect();
        return Ok(json!({
            "case": case.name(),
            "ranks": [r.ranks.0, r.ranks.1],
            "forcedZero": r.forced_zero,
            "stages": stages,
        }));
    }
    let text = c.lemma31.as_deref().expect("clap enforces one of the group");
    let nums: Vec<u32> = text
        .split(',')
        .map(|a| a.trim().parse().map_err(|_| CliError::Usage(format!("bad --lemma31 '{text}'"))))
        .collect::<Res<_>>()?;
    let [d, n, t] = nums[..] else {
        return Err(CliError::Usage(format!("--lemma31 wants d,n,t, got '{text}'")));
    };
    let r = chow::verify_lemma31(d, n, t)?;
    Ok(json!({
        "d": r.d,
        "n": r.n,
        "t": r.t,
        "product": r.product.to_string(),
        "restrictions": r.restrictions.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "classesChecked": r.classes_checked,
        "productNonzero": r.product_nonzero,
        "restrictionsHold": r.restrictions_hold,
        "coefficientsNonnegative": r.coefficients_nonnegative,
        "verified": r.verified(),
    }))
}
