//! Argument parsing and dispatch for the `overres` binary.

use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use overres::bounds::{self, Format as TableFormat};
use overres::frobkernels::{build_phi_n, DividedPowerAction};
use overres::groupgen::{build_phi, compare_policies, element_cap, first_order_check, generator_elements, pseudo_chevalley_group, tangent_space, GeneratorPolicy};
use overres::liealgebra::RestrictedLieAlgebra;
use overres::repmod::{
    abs_chev_exhaustive, adjoint_rep, default_cone_mode, is_over_restricted, is_restricted, regular_rep_u0, trivial_rep,
    weyl_height_check, weyl_module_on, ConeMode, Representation,
};
use overres::rootdata::{CartanType, RootSystem, TypeLabel, Weight};
use overres::u0algebra::U0Algebra;
use overres::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "overres", version, about = "Over-restricted representations of restricted Lie algebras of Chevalley type")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Seed for randomized checks
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Write output here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepKind {
    /// V(1) for sl₂
    Natural,
    /// V(m) for sl₂
    Weyl,
    Adjoint,
    Trivial,
    /// left regular module of U₀(𝔤)
    Regular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Roots,
    Cone,
}

impl From<Policy> for GeneratorPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Roots => GeneratorPolicy::RootExponentials,
            Policy::Cone => GeneratorPolicy::FullCone,
        }
    }
}

#[derive(clap::Args, Debug, Clone)]
pub struct RepArgs {
    /// Type and rank, e.g. A1 or G2
    #[arg(long = "type", default_value = "A1")]
    pub kind: String,
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, default_value_t = RepKind::Weyl)]
    pub rep: RepKind,
    /// Highest weight for Weyl modules of sl₂
    #[arg(long, default_value_t = 1)]
    pub m: u64,
}

#[derive(clap::Args, Debug, Clone)]
pub struct AlgebraArgs {
    #[arg(long = "type", default_value = "A1")]
    pub kind: String,
    #[arg(long)]
    pub p: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coxeter numbers and coefficients a
    Table1,
    /// Minimal primes and levels with centre marks
    Table2,
    /// Dimension of the centre of the Chevalley algebra
    Centre { kind: char, rank: usize, p: u64 },
    /// Height ξ of a module, or of V(λ) from its weights with --lambda
    Height {
        #[arg(long = "type", default_value = "A1")]
        kind: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_enum, default_value_t = RepKind::Weyl)]
        rep: RepKind,
        #[arg(long, default_value_t = 1)]
        m: u64,
        /// Dominant weight in fundamental-weight coordinates, e.g. 1,1
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        lambda: Option<Vec<i64>>,
    },
    /// θ(x)^{⌊(p+1)/2⌋} = 0 on the p-nilpotent cone
    OverRestricted {
        #[command(flatten)]
        rep: RepArgs,
        /// Sample this many cone points instead of enumerating
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Order and word diameter of the group generated by truncated exponentials
    Group {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, value_enum, default_value_t = Policy::Roots)]
        policy: Policy,
        /// Also compare against the full-cone generating set
        #[arg(long)]
        compare: bool,
    },
    /// The graph map from the group on V to the group on 𝔤
    Phi {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, value_enum, default_value_t = Policy::Roots)]
        policy: Policy,
        /// Use the divided-power families at level n instead (sl₂ only)
        #[arg(long)]
        frobenius_n: Option<u32>,
    },
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Dimension of the over-restricted quotient of U₀(𝔤)
    OverenvDim {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Band vector and alcoves below; the reference anchors without --lambda
    Alcove {
        #[arg(long = "type")]
        kind: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<i64>>,
    },
    /// Minimal primes, minimal levels and minimality witnesses for one type
    Thresholds {
        #[arg(long = "type")]
        kind: String,
        /// Also report the bound on ξ(U₀(𝔤)) at this prime
        #[arg(long)]
        p: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// θ(e^{ad x} y) = e^{θx} θ(y) e^{−θx} over the whole cone
    AbsChev {
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Divided-power version on V(m) at level n
    AbsNChev {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u64,
    },
    /// Bialgebra and antipode identities on U₀(𝔤)
    Hopf {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Jacobi identity on random triples
    Jacobi {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// θ(x)^p = θ(x^[p]) on the basis
    Restricted {
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Tangent space of the generated group against θ(𝔤₀)
    Tangent {
        #[command(flatten)]
        rep: RepArgs,
        /// Random conjugators per round (two rounds)
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Δ(e^x) − e^x ⊗ e^x starts in degree ≥ ⌊(p+1)/2⌋ for every root vector
    Deviation {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// ξ(V(λ)) against 1 + max k_i
    WeylHeight {
        #[arg(long = "type")]
        kind: String,
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<i64>,
    },
}

/// Rendered result of one command.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub report: Value,
    pub csv: Option<String>,
    /// false when a verification found a counterexample
    pub passed: bool,
}

impl Outcome {
    fn new(text: String, report: impl Serialize) -> Self {
        Outcome {
            text,
            report: serde_json::to_value(report).expect("report serializes"),
            csv: None,
            passed: true,
        }
    }

    fn verdict(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }
}

pub fn command_name(c: &Command) -> String {
    match c {
        Command::Table1 => "table1".into(),
        Command::Table2 => "table2".into(),
        Command::Centre { .. } => "centre".into(),
        Command::Height { .. } => "height".into(),
        Command::OverRestricted { .. } => "over-restricted".into(),
        Command::Group { .. } => "group".into(),
        Command::Phi { .. } => "phi".into(),
        Command::Verify { check } => format!(
            "verify {}",
            match check {
                VerifyCommand::AbsChev { .. } => "abs-chev",
                VerifyCommand::AbsNChev { .. } => "abs-n-chev",
                VerifyCommand::Hopf { .. } => "hopf",
                VerifyCommand::Jacobi { .. } => "jacobi",
                VerifyCommand::Restricted { .. } => "restricted",
                VerifyCommand::Tangent { .. } => "tangent",
                VerifyCommand::Deviation { .. } => "deviation",
                VerifyCommand::WeylHeight { .. } => "weyl-height",
            }
        ),
        Command::OverenvDim { .. } => "overenv-dim".into(),
        Command::Alcove { .. } => "alcove".into(),
        Command::Thresholds { .. } => "thresholds".into(),
    }
}

fn label(kind: &str) -> Result<TypeLabel> {
    kind.parse()
}

fn algebra(kind: &str, p: u64) -> Result<Arc<RestrictedLieAlgebra>> {
    RestrictedLieAlgebra::chevalley(&RootSystem::from_label(label(kind)?)?, p)
}

pub fn build_rep(args: &RepArgs) -> Result<Representation> {
    let alg = algebra(&args.kind, args.p)?;
    match args.rep {
        RepKind::Natural => weyl_module_on(&alg, 1),
        RepKind::Weyl => weyl_module_on(&alg, args.m),
        RepKind::Adjoint => adjoint_rep(&alg),
        RepKind::Trivial => trivial_rep(&alg),
        RepKind::Regular => regular_rep_u0(&*U0Algebra::new(alg)?),
    }
}

fn pass_fail(passed: bool, detail: &str) -> String {
    format!("{} ({detail})", if passed { "PASS" } else { "FAIL" })
}

fn text_lines(report: &Value) -> String {
    let mut s = String::new();
    if let Value::Object(map) = report {
        for (k, v) in map {
            s.push_str(&format!("{k}: {}\n", v));
        }
    }
    s
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    let seed = cli.seed;
    Ok(match &cli.command {
        Command::Table1 => {
            let rows = bounds::table1()?;
            let mut o = Outcome::new(bounds::render_table1(&rows, TableFormat::Text), &rows);
            o.csv = Some(bounds::render_table1(&rows, TableFormat::Csv));
            o
        }
        Command::Table2 => {
            let rows = bounds::table2()?;
            let mut o = Outcome::new(bounds::render_table2(&rows, TableFormat::Text), &rows);
            o.csv = Some(bounds::render_table2(&rows, TableFormat::Csv));
            o
        }
        Command::Centre { kind, rank, p } => {
            let l = TypeLabel::new(CartanType::from_letter(kind.to_ascii_uppercase())?, *rank)?;
            let alg = RestrictedLieAlgebra::chevalley(&RootSystem::from_label(l)?, *p)?;
            let z = alg.centre();
            let text = format!("dim Z = {}{}\n", z.len(), if z.is_empty() { "" } else { " (dagger)" });
            Outcome::new(text, json!({ "type": l.to_string(), "p": p, "dim": z.len(), "dagger": !z.is_empty(), "basis": z }))
        }
        Command::Height { kind, p, rep, m, lambda } => match lambda {
            Some(lambda) => {
                let rs = RootSystem::from_label(label(kind)?)?;
                let r = weyl_height_check(&rs, &Weight(lambda.clone()))?;
                Outcome::new(format!("xi = {}\n", r.height), r)
            }
            None => {
                let p = p.ok_or_else(|| Error::Invalid("--p is required without --lambda".into()))?;
                let rep = build_rep(&RepArgs { kind: kind.clone(), p, rep: *rep, m: *m })?;
                let r = bounds::integrability_threshold(&rep, p)?;
                let text = format!("xi = {}\nintegrable from n = {}\n", r.xi, r.n);
                Outcome::new(text, json!({ "module": rep.label(), "dim": rep.dim(), "threshold": r }))
            }
        },
        Command::OverRestricted { rep, samples } => {
            let module = build_rep(rep)?;
            let mode = match samples {
                Some(samples) => ConeMode::Sampled { samples: *samples, seed },
                None => default_cone_mode(module.algebra(), seed),
            };
            let r = is_over_restricted(&module, mode)?;
            let text = format!(
                "{} is {}over-restricted ({} cone points, {})\n",
                module.label(),
                if r.holds { "" } else { "not " },
                r.points_checked,
                if r.certifying { "certified" } else { "sampled" }
            );
            Outcome::new(text, json!({ "module": module.label(), "seed": seed, "report": r }))
        }
        Command::Group { rep, policy, compare } => {
            let module = build_rep(rep)?;
            let cap = element_cap();
            let g = pseudo_chevalley_group(&module, (*policy).into(), cap)?;
            let report = g.report();
            let mut text = format!("order {}\ndiameter {}\n", report.order, report.diameter);
            let comparison = if *compare { Some(compare_policies(&module, cap)?) } else { None };
            if let Some(c) = &comparison {
                text.push_str(&format!("full cone order {} ({})\n", c.cone_order, if c.equal { "equal" } else { "different" }));
            }
            Outcome::new(text, json!({ "module": module.label(), "group": report, "comparison": comparison }))
        }
        Command::Phi { rep, policy, frobenius_n } => {
            let cap = element_cap();
            let (r, name) = match frobenius_n {
                Some(n) => (build_phi_n(rep.m, rep.p, *n, cap)?, format!("V({}) level {n}", rep.m)),
                None => {
                    let module = build_rep(rep)?;
                    (build_phi(&module, (*policy).into(), cap)?, module.label().to_string())
                }
            };
            let text = format!(
                "{name}: |G_V| = {}, |G_g| = {}, |graph| = {}\nfunction: {}\nkernel order {} (central {}, in Aut {})\n",
                r.order_v,
                r.order_g,
                r.order_graph,
                r.is_function,
                r.kernel_order(),
                r.kernel_central,
                r.kernel_in_aut
            );
            Outcome::new(text, r)
        }
        Command::Verify { check } => verify(check, seed)?,
        Command::OverenvDim { alg } => {
            let u0 = U0Algebra::new(algebra(&alg.kind, alg.p)?)?;
            let r = u0.over_env_dimension()?;
            Outcome::new(format!("dim U_over = {}\n", r.quotient_dim), r)
        }
        Command::Alcove { kind, p, lambda } => match (kind, p, lambda) {
            (Some(kind), Some(p), Some(lambda)) => {
                let rs = RootSystem::from_label(label(kind)?)?;
                let r = rs.alcove_bands(&Weight(lambda.clone()), *p)?;
                let text = format!(
                    "pairings {:?}\nbands {:?}\nalcoves below: {}\n",
                    r.pairings,
                    r.bands,
                    r.count_below.map_or("not computed".into(), |c| c.to_string())
                );
                Outcome::new(text, r)
            }
            (None, None, None) => {
                let a = bounds::alcove_anchors()?;
                let mut text = String::new();
                for c in a.g2_checks.iter().chain(&a.a2_checks) {
                    text.push_str(&format!("{}: {} {} {} {}\n", c.description, c.lhs, if c.less_than { "<" } else { ">" }, c.rhs, c.holds));
                }
                text.push_str(&format!(
                    "G2 p={}: {} alcoves below (reference {}; {})\n",
                    a.g2_p,
                    a.g2_count_below.map_or("?".into(), |c| c.to_string()),
                    a.g2_reference_count,
                    a.convention
                ));
                let ok = a.g2_checks.iter().chain(&a.a2_checks).all(|c| c.holds);
                Outcome::new(text, a).verdict(ok)
            }
            _ => return Err(Error::Invalid("alcove needs all of --type, --p and --lambda, or none".into())),
        },
        Command::Thresholds { kind, p } => {
            let r = bounds::threshold_report(label(kind)?)?;
            let xi = match p {
                Some(p) => Some(bounds::xi_u0_bound(&RootSystem::from_label(label(kind)?)?, *p)?),
                None => None,
            };
            let mut text = format!("{}: a = {}, 2h-2 = {}\n", r.label, r.a, r.two_h_minus_2);
            for w in &r.witnesses {
                text.push_str(&format!(
                    "n = {}: p = {} (previous prime {})\n",
                    w.n,
                    w.p,
                    w.previous_prime.map_or("none".into(), |q| format!("{q} fails")),
                ));
            }
            for (e, q) in r.min_levels.iter().zip(bounds::PRIME_COLUMNS) {
                text.push_str(&format!("p = {q}: n = {}{}\n", e.value, if e.dagger { " (dagger)" } else { "" }));
            }
            if let Some(x) = &xi {
                text.push_str(&format!("xi(U0) bound {}, computed {}\n", x.bound, x.computed.map_or("-".into(), |c| c.to_string())));
            }
            Outcome::new(text, json!({ "thresholds": r, "xi_u0": xi }))
        }
    })
}

fn verify(check: &VerifyCommand, seed: u64) -> Result<Outcome> {
    Ok(match check {
        VerifyCommand::AbsChev { rep } => {
            let module = build_rep(rep)?;
            let r = abs_chev_exhaustive(&module)?;
            let mut text = pass_fail(r.passed(), "all cone points × basis");
            text.push_str(&format!("\n{} cone points, {} checks, {} failures\n", r.cone_points, r.checks, r.failures));
            let ok = r.passed();
            Outcome::new(text, r).verdict(ok)
        }
        VerifyCommand::AbsNChev { p, n, m } => {
            let r = DividedPowerAction::new(*m, *p, *n)?.abs_n_chev_exhaustive();
            let mut text = pass_fail(r.passed(), "all t × spanning operators");
            text.push_str(&format!("\nn-over-restricted: {}\n{} checks, {} failures\n", r.n_over_restricted, r.checks, r.failures));
            let ok = r.passed();
            Outcome::new(text, r).verdict(ok)
        }
        VerifyCommand::Hopf { alg } => {
            let r = U0Algebra::new(algebra(&alg.kind, alg.p)?)?.hopf_axioms()?;
            let text = format!("{}\n", pass_fail(r.passed(), &format!("{} monomials", r.monomials)));
            let ok = r.passed();
            Outcome::new(text, r).verdict(ok)
        }
        VerifyCommand::Jacobi { alg, samples } => {
            let r = algebra(&alg.kind, alg.p)?.jacobi_check(*samples, seed);
            let text = format!("{}\n", pass_fail(r.failures == 0, &format!("{} random triples", r.samples)));
            let ok = r.failures == 0;
            Outcome::new(text, r).verdict(ok)
        }
        VerifyCommand::Restricted { rep } => {
            let module = build_rep(rep)?;
            let ok = is_restricted(&module);
            Outcome::new(format!("{}\n", pass_fail(ok, "basis p-powers")), json!({ "module": module.label(), "restricted": ok })).verdict(ok)
        }
        VerifyCommand::Tangent { rep, samples } => {
            let module = build_rep(rep)?;
            let xs: Vec<_> = generator_elements(module.algebra(), GeneratorPolicy::RootExponentials)?.into_iter().map(|(x, _)| x).collect();
            let group = pseudo_chevalley_group(&module, GeneratorPolicy::RootExponentials, element_cap())?;
            let r = tangent_space(&module, &xs, &group, *samples, seed)?;
            let first_order = first_order_check(&module, &xs)?;
            let ok = r.equals_theta_g0 && r.stabilized && first_order;
            let text = format!("{}\ntangent dim {}, dim θ(g0) {}\n", pass_fail(ok, "tangent span equals θ(g0)"), r.dim, r.theta_g0_dim);
            Outcome::new(text, json!({ "seed": seed, "tangent": r, "first_order_matches": first_order })).verdict(ok)
        }
        VerifyCommand::Deviation { alg } => {
            let a = algebra(&alg.kind, alg.p)?;
            let u0 = U0Algebra::new(a.clone())?;
            let reports = a.root_vector_indices().into_iter().map(|i| u0.deviation(&a.basis_element(i))).collect::<Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.meets_bound());
            let lowest = reports.iter().filter_map(|r| r.max_factor_degree).min();
            let text = format!(
                "{}\nlowest surviving degree {}\n",
                pass_fail(ok, &format!("bound {}", (alg.p + 1) / 2)),
                lowest.map_or("none".into(), |d| d.to_string())
            );
            Outcome::new(text, reports).verdict(ok)
        }
        VerifyCommand::WeylHeight { kind, lambda } => {
            let rs = RootSystem::from_label(label(kind)?)?;
            let r = weyl_height_check(&rs, &Weight(lambda.clone()))?;
            let ok = r.within_bound();
            let text = format!("{}\nxi = {}, 1 + max k_i = {}\n", pass_fail(ok, "xi ≤ 1 + max k_i"), r.height, r.bound);
            Outcome::new(text, r).verdict(ok)
        }
    })
}

/// Bytes for the chosen format.
pub fn render(cli: &Cli, outcome: &Outcome) -> String {
    match cli.format {
        OutputFormat::Text => outcome.text.clone(),
        OutputFormat::Json => {
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command_name(&cli.command),
                "seed": cli.seed,
                "passed": outcome.passed,
                "report": outcome.report,
            });
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
        OutputFormat::Csv => match &outcome.csv {
            Some(csv) => csv.clone(),
            None => {
                let mut s = String::from("key,value\n");
                let flat = match &outcome.report {
                    Value::Object(_) => outcome.report.clone(),
                    other => json!({ "report": other }),
                };
                for line in text_lines(&flat).lines() {
                    let (k, v) = line.split_once(": ").unwrap_or((line, ""));
                    s.push_str(&format!("{k},\"{}\"\n", v.replace('"', "\"\"")));
                }
                s
            }
        },
    }
}

/// Exit status: 0 success, 1 verification failure, 2 invalid input.
pub fn run(cli: &Cli) -> (i32, String) {
    match dispatch(cli) {
        Ok(outcome) => (if outcome.passed { 0 } else { 1 }, render(cli, &outcome)),
        Err(e) => (2, format!("error: {e}\n")),
    }
}
