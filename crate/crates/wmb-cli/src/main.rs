use std::io::Read;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use wmb::base::{alternative_delta, base_projection, construct_base, image_comparison};
use wmb::gen::{self, FiniteCategory};
use wmb::io::{self, FileKind, ReportFile, StructureFile};
use wmb::modules::{dense_rank, AModule, ModuleCategory};
use wmb::multiplier::{compute_multiplier_monoid, n_into_ma, pi_into_ma};
use wmb::structure::complete_from_t1;
use wmb::{Check, Duality, Field, FieldSpec, Fp, Morphism, Report, Rwmb, Semigroup, Q};

/// Prime fields the binary is built for.
const PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101];

const FIELD_HELP: &str = "Field to work over: Q or Fp:<p> with p in 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101. \
For commands reading a structure file it must agree with the field the file declares. Default for gen: Q";

#[derive(Parser)]
#[command(name = "wmb", version, about = "Exact verification of regular weak multiplier bimonoids in graded vector spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true, help = FIELD_HELP)]
    field: Option<String>,
    /// Worker threads for running checks
    #[arg(long, global = true, value_name = "N")]
    parallel: Option<usize>,
    /// Report only checks whose name matches this glob
    #[arg(long, global = true, value_name = "GLOB")]
    only: Option<String>,
    /// Machine-readable report (default)
    #[arg(long, global = true, conflicts_with = "human")]
    json: bool,
    /// Plain-text report
    #[arg(long, global = true)]
    human: bool,
    /// Omit per-check timings, making reports byte-identical across runs
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every defining condition and derived identity on a structure file
    Check { path: String },
    /// Construct the base comonoid L; writes a base file with --out
    Base {
        path: String,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Tensor two modules over a base file and verify monoidality.
    /// A module is a module file, or :regular (A itself) or :base (L)
    Modules {
        structure: String,
        base: String,
        left: String,
        right: String,
        /// Third module for the associativity check (default: RIGHT)
        #[arg(long)]
        third: Option<String>,
        /// Where to write the tensor product module file
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Compute the multiplier monoid of A and the maps into it
    Multiplier { path: String },
    /// Generate a certified structure file
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(short, long, global = true)]
        out: Option<String>,
    },
    /// Complete a partial file holding m and t1 to t2, t3, t4
    Complete {
        path: String,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Reduce a structure file to a partial file (m, t1, e1, e2, j)
    Partial {
        path: String,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Apply one of the symmetries: opposite, coopposite, opposite-coopposite
    Dual {
        path: String,
        which: String,
        #[arg(short, long)]
        out: Option<String>,
    },
}

#[derive(Subcommand, Clone)]
enum GenKind {
    /// Functions on a finite abelian group, given by its invariant factors
    Group {
        #[arg(required = true)]
        factors: Vec<u32>,
    },
    /// Category algebra: arrow, discrete:N, cyclic:N, pair:N, or a presentation JSON file
    Category { name: String },
    /// The exterior algebra on one odd generator in super vector spaces
    Exterior,
    /// k[x]/(x^n) graded by Z/n with braiding q
    QuantumLine { n: u32, q: String },
    /// Tensor product of two structure files; the left one must be trivially graded
    Product { left: String, right: String },
}

/// What a command produced: a report, a structure file, or both.
#[derive(Default)]
struct Outcome {
    report: Option<ReportFile>,
    structure: Option<StructureFile>,
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

fn read_structure(path: &str) -> Result<StructureFile> {
    let text = read_input(path)?;
    StructureFile::parse(&text).with_context(|| format!("in {path}"))
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    let spec: FieldSpec = s.parse().map_err(|e| anyhow!("--field: {e}"))?;
    if let FieldSpec::PrimeField(p) = spec {
        if !PRIMES.contains(&p) {
            bail!("--field: F_{p} is not built in; supported primes: {PRIMES:?}");
        }
    }
    Ok(spec)
}

/// The field of `file`, cross-checked against `--field`.
fn file_field(file: &StructureFile, flag: &Option<String>) -> Result<FieldSpec> {
    let declared = file.field_spec()?;
    if let Some(f) = flag {
        let wanted = parse_field(f)?;
        if wanted != declared {
            bail!("field mismatch: --field {wanted} but the file declares {declared}");
        }
    }
    Ok(declared)
}

macro_rules! dispatch {
    ($spec:expr, $f:ident ( $($arg:expr),* )) => {
        match $spec {
            FieldSpec::Rationals => $f::<Q>($($arg),*),
            FieldSpec::PrimeField(2) => $f::<Fp<2>>($($arg),*),
            FieldSpec::PrimeField(3) => $f::<Fp<3>>($($arg),*),
            FieldSpec::PrimeField(5) => $f::<Fp<5>>($($arg),*),
            FieldSpec::PrimeField(7) => $f::<Fp<7>>($($arg),*),
            FieldSpec::PrimeField(11) => $f::<Fp<11>>($($arg),*),
            FieldSpec::PrimeField(13) => $f::<Fp<13>>($($arg),*),
            FieldSpec::PrimeField(17) => $f::<Fp<17>>($($arg),*),
            FieldSpec::PrimeField(19) => $f::<Fp<19>>($($arg),*),
            FieldSpec::PrimeField(23) => $f::<Fp<23>>($($arg),*),
            FieldSpec::PrimeField(29) => $f::<Fp<29>>($($arg),*),
            FieldSpec::PrimeField(31) => $f::<Fp<31>>($($arg),*),
            FieldSpec::PrimeField(101) => $f::<Fp<101>>($($arg),*),
            FieldSpec::PrimeField(p) => Err(anyhow!("F_{p} is not built in; supported primes: {PRIMES:?}")),
        }
    };
}

fn load_rwmb<F: Field>(file: &StructureFile) -> Result<Rwmb<F>> {
    file.expect_kind(&[FileKind::Rwmb, FileKind::Base])?;
    Ok(io::rwmb_from_decoded(&io::decode::<F>(file)?)?)
}

fn single(name: &str, pass: bool, note: impl Into<String>) -> Report {
    Report::from_iter([Check::flag(name, pass, Some(note.into()))])
}

fn failed(name: &str, err: impl std::fmt::Display) -> Report {
    Report::from_iter([Check::failed(name, err)])
}

fn cmd_check<F: Field>(file: &StructureFile) -> Result<Outcome> {
    let s = load_rwmb::<F>(file)?;
    let mut rep = ReportFile::new("check", F::spec());
    rep.add("definition", &s.check_rwmb());
    rep.add("derived", &s.appendix_suite());
    rep.fact("dim_a", s.a.dim());
    Ok(Outcome { report: Some(rep), structure: None })
}

fn cmd_base<F: Field>(file: &StructureFile) -> Result<Outcome> {
    let s = load_rwmb::<F>(file)?;
    let mut rep = ReportFile::new("base", F::spec());
    rep.fact("dim_a", s.a.dim());
    let b = match construct_base(&s) {
        Ok(b) => b,
        Err(e) => {
            if let Ok((l, _)) = base_projection(&s) {
                rep.fact("dim_l", l.dim());
            }
            rep.add("base", &failed("construction", e));
            return Ok(Outcome { report: Some(rep), structure: None });
        }
    };
    rep.fact("dim_l", b.l.dim());
    rep.add("base", &b.verify_factorizations(&s));
    rep.add("coseparable", &b.verify_coseparable());
    rep.add(
        "base",
        &single("n1_nondegenerate", b.n1_nondegenerate(), "hypothesis violated: n1 is not right non-degenerate"),
    );
    match image_comparison(&s, &b) {
        Ok(ic) => {
            rep.fact("dim_image", ic.dim_image);
            rep.add("oracle", &single("image_isomorphic", ic.isomorphic, "L is not isomorphic to the image oracle"));
        }
        Err(e) => rep.add("oracle", &failed("image_isomorphic", e)),
    }
    match alternative_delta(&s, &b) {
        Ok(d) => rep.add("oracle", &Report::from_iter([Check::compare("alternative_delta", &d, &b.delta)])),
        Err(e) => rep.add("oracle", &failed("alternative_delta", e)),
    }
    let structure = rep.pass.then(|| io::base_to_file(&s, &b));
    Ok(Outcome { report: Some(rep), structure })
}

fn module_arg<F: Field>(cat: &ModuleCategory<F>, arg: &str) -> Result<std::result::Result<AModule<F>, String>> {
    let made = match arg {
        ":regular" => cat.regular_module(),
        ":base" => cat.base_module(),
        path => {
            let file = read_structure(path)?;
            let d = io::decode::<F>(&file).with_context(|| format!("in {path}"))?;
            let (a, v, action) = io::module_from_decoded(&d).with_context(|| format!("in {path}"))?;
            if a != cat.s.a || d.ctx != cat.s.ctx {
                bail!("{path}: the module is over a different object A or grading");
            }
            cat.make_module(&v, &action)
        }
    };
    Ok(made.map_err(|e| format!("{arg}: {e}")))
}

fn cmd_modules<F: Field>(structure: &StructureFile, base: &StructureFile, args: [&str; 3]) -> Result<Outcome> {
    let s = load_rwmb::<F>(structure)?;
    let (s2, b) = io::base_from_decoded(&io::decode::<F>(base)?)?;
    if s != s2 {
        bail!("the base file belongs to a different structure");
    }
    let mut rep = ReportFile::new("modules", F::spec());
    let cat = match ModuleCategory::new(&s, &b) {
        Ok(c) => c,
        Err(e) => {
            rep.add("modules", &failed("coactions_on_a", e));
            return Ok(Outcome { report: Some(rep), structure: None });
        }
    };
    let (d1, d2) = cat.dhat_surjective;
    rep.add("modules", &single("dhat1_surjective", d1, "hypothesis violated: d-hat_1 is not epi"));
    rep.add("modules", &single("dhat2_surjective", d2, "hypothesis violated: d-hat_2 is not epi"));
    let mut mods = Vec::new();
    for (role, arg) in ["left", "right", "third"].iter().zip(args) {
        match module_arg(&cat, arg)? {
            Ok(m) => mods.push(m),
            Err(e) => {
                rep.add("modules", &failed(&format!("{role}_module"), e));
                return Ok(Outcome { report: Some(rep), structure: None });
            }
        }
    }
    let t = match cat.module_tensor(&mods[0], &mods[1]) {
        Ok(t) => t,
        Err(e) => {
            rep.add("tensor", &failed("construction", e));
            return Ok(Outcome { report: Some(rep), structure: None });
        }
    };
    rep.fact("dim_tensor", t.module.obj.dim());
    rep.add("tensor", &t.report);
    let cot = cat.cotensor_dim(&mods[0], &mods[1])?;
    rep.fact("cotensor_dim", cot);
    rep.add(
        "oracle",
        &single("s_rank_dense_oracle", dense_rank(&t.s.matrix) == cot, "dense rank of s differs from the cotensor dimension"),
    );
    match cat.verify_monoidality(&mods[0], &mods[1], &mods[2]) {
        Ok(r) => rep.add("monoidality", &r),
        Err(e) => rep.add("monoidality", &failed("construction", e)),
    }
    let out = io::module_to_file(&s.ctx, s.frame, &s.a, &t.module.obj, &t.module.action);
    let structure = rep.pass.then_some(out);
    Ok(Outcome { report: Some(rep), structure })
}

fn cmd_multiplier<F: Field>(file: &StructureFile) -> Result<Outcome> {
    file.expect_kind(&[FileKind::Rwmb, FileKind::Base, FileKind::Partial])?;
    let d = io::decode::<F>(file)?;
    let mut rep = ReportFile::new("multiplier", F::spec());
    let s = match d.kind {
        FileKind::Partial if !d.has_morphism("t2") || !d.has_morphism("j") => None,
        _ => Some(io::rwmb_from_decoded(&d)?),
    };
    let sg = match &s {
        Some(s) => s.semigroup(),
        None => Semigroup::new(d.ctx.clone(), d.object("A")?, d.morphism("m")?)?,
    };
    rep.fact("dim_a", sg.a.dim());
    let ma = match compute_multiplier_monoid(&sg) {
        Ok(ma) => ma,
        Err(e) => {
            rep.add("multiplier", &failed("construction", e));
            return Ok(Outcome { report: Some(rep), structure: None });
        }
    };
    rep.fact("dim_ma", ma.dim());
    rep.fact("i_is_iso", ma.i_is_iso());
    rep.add("multiplier", &ma.report());
    if let Some(s) = &s {
        let r = match pi_into_ma(s, &ma) {
            Ok(maps) => single("contractions_factor", maps.len() == 4, ""),
            Err(e) => failed("contractions_factor", e),
        };
        rep.add("multiplier", &r);
        if let Ok(b) = construct_base(s) {
            match n_into_ma(s, &b, &ma) {
                Ok(n) => {
                    rep.fact("n_mono", n.mono);
                    rep.fact("n1_nondegenerate", n.n1_nondegenerate);
                    rep.add("multiplier", &single("n_factors_pi_l", n.factors_pi_l, "n . p differs from (piL1, piL2)"));
                    rep.add(
                        "multiplier",
                        &single("n_mono_matches_n1", n.mono == n.n1_nondegenerate, "mono flag disagrees with n1"),
                    );
                }
                Err(e) => rep.add("multiplier", &failed("n_factors", e)),
            }
        }
    }
    Ok(Outcome { report: Some(rep), structure: None })
}

fn category(name: &str) -> Result<FiniteCategory> {
    let sized = |prefix: &str| -> Option<Result<usize>> {
        name.strip_prefix(prefix).map(|n| n.parse::<usize>().map_err(|_| anyhow!("bad size in {name:?}")))
    };
    if name == "arrow" {
        return Ok(FiniteCategory::arrow());
    }
    if let Some(n) = sized("discrete:") {
        return Ok(FiniteCategory::discrete(n?));
    }
    if let Some(n) = sized("cyclic:") {
        return Ok(FiniteCategory::cyclic_monoid(n?));
    }
    if let Some(n) = sized("pair:") {
        return Ok(FiniteCategory::pair_groupoid(n?));
    }
    let text = read_input(name)?;
    serde_json::from_str(&text).with_context(|| format!("category presentation {name}"))
}

fn cmd_gen<F: Field>(kind: &GenKind) -> Result<Outcome> {
    let built = match kind {
        GenKind::Group { factors } => gen::build_group_functions::<F>(factors),
        GenKind::Category { name } => gen::build_category_algebra::<F>(&category(name)?),
        GenKind::Exterior => gen::build_exterior_super::<F>(),
        GenKind::QuantumLine { n, q } => {
            let q = F::parse_scalar(q).map_err(|e| anyhow!("q: {e}"))?;
            gen::build_quantum_line::<F>(*n, q)
        }
        GenKind::Product { left, right } => {
            let l = load_rwmb::<F>(&read_structure(left)?)?;
            let r = load_rwmb::<F>(&read_structure(right)?)?;
            gen::build_product(&l, &r)
        }
    };
    let s = built.map_err(|e| anyhow!("{e}"))?;
    let mut rep = ReportFile::new("gen", F::spec());
    rep.add("definition", &s.check_rwmb());
    if rep.pass {
        rep.add("derived", &s.appendix_suite());
    }
    if rep.pass {
        Ok(Outcome { report: None, structure: Some(io::rwmb_to_file(&s)) })
    } else {
        Ok(Outcome { report: Some(rep), structure: None })
    }
}

fn cmd_complete<F: Field>(file: &StructureFile) -> Result<Outcome> {
    file.expect_kind(&[FileKind::Partial])?;
    let d = io::decode::<F>(file)?;
    let a = d.object("A")?;
    let (m, t1) = (d.morphism("m")?, d.morphism("t1")?);
    let sg = Semigroup::new(d.ctx.clone(), a.clone(), m.clone())?;
    let mut rep = ReportFile::new("complete", F::spec());
    let (t2, t3, t4) = match complete_from_t1(&sg, &t1) {
        Ok(t) => t,
        Err(e) => {
            rep.add("completion", &failed("complete_from_t1", e));
            return Ok(Outcome { report: Some(rep), structure: None });
        }
    };
    rep.add("completion", &Report::from_iter([Check::ok("complete_from_t1")]));
    let extras: Vec<Morphism<F>> = ["e1", "e2", "j"].iter().filter_map(|r| d.morphism(r).ok()).collect();
    let structure = if let [e1, e2, j] = &extras[..] {
        let mut s = Rwmb::new(d.ctx.clone(), a, t1, t2, t3, t4, e1.clone(), e2.clone(), j.clone())?;
        s.frame = d.frame;
        rep.add("completion", &Report::from_iter([Check::compare("m_matches_j_t1", &s.m(), &m)]));
        rep.add("definition", &s.check_rwmb());
        io::rwmb_to_file(&s)
    } else {
        io::partial_to_file(&d.ctx, d.frame, &a, &[("m", &m), ("t1", &t1), ("t2", &t2), ("t3", &t3), ("t4", &t4)])
    };
    Ok(Outcome { report: Some(rep), structure: Some(structure) })
}

fn cmd_partial<F: Field>(file: &StructureFile) -> Result<Outcome> {
    let s = load_rwmb::<F>(file)?;
    let m = s.m();
    let parts = [("m", &m), ("t1", &s.t1), ("e1", &s.e1), ("e2", &s.e2), ("j", &s.j)];
    Ok(Outcome { report: None, structure: Some(io::partial_to_file(&s.ctx, s.frame, &s.a, &parts)) })
}

fn cmd_dual<F: Field>(file: &StructureFile, which: Duality) -> Result<Outcome> {
    let s = load_rwmb::<F>(file)?;
    Ok(Outcome { report: None, structure: Some(io::rwmb_to_file(&s.dualize(which))) })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let flag = &cli.opts.field;
    match &cli.cmd {
        Command::Check { path } => {
            let f = read_structure(path)?;
            dispatch!(file_field(&f, flag)?, cmd_check(&f))
        }
        Command::Base { path, .. } => {
            let f = read_structure(path)?;
            dispatch!(file_field(&f, flag)?, cmd_base(&f))
        }
        Command::Modules { structure, base, left, right, third, .. } => {
            let s = read_structure(structure)?;
            let b = read_structure(base)?;
            let spec = file_field(&s, flag)?;
            if file_field(&b, flag)? != spec {
                bail!("structure and base files declare different fields");
            }
            let third = third.as_deref().unwrap_or(right);
            dispatch!(spec, cmd_modules(&s, &b, [left.as_str(), right.as_str(), third]))
        }
        Command::Multiplier { path } => {
            let f = read_structure(path)?;
            dispatch!(file_field(&f, flag)?, cmd_multiplier(&f))
        }
        Command::Gen { kind, .. } => {
            let spec = match flag {
                Some(f) => parse_field(f)?,
                None => FieldSpec::Rationals,
            };
            dispatch!(spec, cmd_gen(kind))
        }
        Command::Complete { path, .. } => {
            let f = read_structure(path)?;
            dispatch!(file_field(&f, flag)?, cmd_complete(&f))
        }
        Command::Partial { path, .. } => {
            let f = read_structure(path)?;
            dispatch!(file_field(&f, flag)?, cmd_partial(&f))
        }
        Command::Dual { path, which, .. } => {
            let which: Duality = which.parse().map_err(|e: String| anyhow!(e))?;
            let f = read_structure(path)?;
            dispatch!(file_field(&f, flag)?, cmd_dual(&f, which))
        }
    }
}

fn out_path(cmd: &Command) -> Option<&str> {
    match cmd {
        Command::Base { out, .. }
        | Command::Modules { out, .. }
        | Command::Gen { out, .. }
        | Command::Complete { out, .. }
        | Command::Partial { out, .. }
        | Command::Dual { out, .. } => out.as_deref(),
        Command::Check { .. } | Command::Multiplier { .. } => None,
    }
}

/// Structure-producing commands print the structure when no --out is given.
fn prints_structure(cmd: &Command) -> bool {
    matches!(cmd, Command::Gen { .. } | Command::Complete { .. } | Command::Partial { .. } | Command::Dual { .. })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.opts.parallel {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: --parallel: {e}");
            return ExitCode::from(2);
        }
    }
    let only = match cli.opts.only.as_deref().map(glob::Pattern::new).transpose() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: --only: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut code = 0;
    if let Some(st) = &outcome.structure {
        let text = st.to_json();
        match out_path(&cli.cmd) {
            Some(path) if path != "-" => {
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: writing {path}: {e}");
                    return ExitCode::from(2);
                }
            }
            Some(_) => print!("{text}"),
            None if prints_structure(&cli.cmd) => print!("{text}"),
            None => {}
        }
    }
    if let Some(mut rep) = outcome.report {
        if let Some(p) = &only {
            rep.retain(|c| p.matches(&c.name));
        }
        if cli.opts.no_timing {
            rep.strip_timing();
        }
        if !rep.pass {
            code = 1;
        }
        let to_stdout = !(prints_structure(&cli.cmd) && outcome.structure.is_some() && out_path(&cli.cmd).is_none());
        let text = if cli.opts.human { rep.to_human() } else { rep.to_json() };
        if to_stdout {
            print!("{text}");
        } else {
            eprint!("{text}");
        }
        if let (false, Some(first)) = (rep.pass, rep.first_failure()) {
            eprintln!("first failure: {}", first.name);
        }
    }
    let _ = cli.opts.json;
    ExitCode::from(code)
}
