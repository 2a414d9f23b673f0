use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quatlat_core::arith::check_prime_pair;
use quatlat_core::complex::{check_link, export_presentation, Format};
use quatlat_core::cosets::{todd_coxeter, Status, DEFAULT_MAX_COSETS};
use quatlat_core::membership::{factor_quaternion, is_admissible};
use quatlat_core::padic::{psi_matrix_mod_pk, solve_cd};
use quatlat_core::quat::reduce_canonical;
use quatlat_core::rewrite::{
    centralizer_is_cyclic, classify_pair, evaluate_word, norm_form_search, normalize_ab,
    normalize_ba, power_commute_scan, verify_relation_in, ExponentRange, ExponentWord,
    NormFormBounds,
};
use quatlat_core::so3::{relation_transfer_check, rotation_axis_angle, theta};
use quatlat_core::suite::{run_suite, SuiteConfig};
use quatlat_core::{build_squares, Error, GeneratorSet, GroupElement, Presentation, Quaternion};

/// Exact computations in the quaternion lattices Γ_{p,l}.
#[derive(Parser, Debug)]
#[command(name = "quatlat", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Pair {
    /// Odd prime for the horizontal generators.
    p: u64,
    /// Odd prime for the vertical generators, distinct from p.
    l: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Ab,
    Ba,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List X_q and its generator letters.
    Genset { q: u64 },
    /// Print the square presentation of Γ_{p,l}.
    Present {
        #[command(flatten)]
        pair: Pair,
    },
    /// Classify ⟨a, b⟩ for a horizontal and b vertical.
    Classify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Also search for commuting powers up to this exponent.
        #[arg(long, default_value_t = 5)]
        scan: u32,
    },
    /// Certify that the centralizer of a vertical element is cyclic.
    Centralizer {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Index of a subgroup by coset enumeration.
    Index {
        #[command(flatten)]
        pair: Pair,
        /// Subgroup generators as quaternions, separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        subgens: Option<String>,
        /// Subgroup generators as words such as "a1^2;b1^2".
        #[arg(long)]
        words: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        /// Write the closed coset table as JSON.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Check a relation in two quaternions, in Γ_{p,l} and in SO_3(Q).
    VerifyRelation {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Exponent word such as "y x^3 y^2 x y^-1".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Write a quaternion as a word in the generators.
    Factor {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Rotation matrix of a quaternion.
    So3 {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Also print the rotation axis and angle data.
        #[arg(long)]
        axis_angle: bool,
    },
    /// 2×2 matrices of a quaternion modulo p^k and l^k.
    PadicEmbed {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 4)]
        precision: u32,
    },
    /// Normal form of a word.
    Normform {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value_t = OrderArg::Ab)]
        order: OrderArg,
    },
    /// Search for t² + 4n u² = p^r l^s with the coprimality conditions.
    NormSearch {
        /// The invariant n.
        n: u64,
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 1000)]
        t_max: u64,
        #[arg(long, default_value_t = 1000)]
        u_max: u64,
        #[arg(long, default_value_t = 12)]
        exp_max: u32,
        /// Allow r = 0 or s = 0.
        #[arg(long)]
        include_zero: bool,
    },
    /// Run the reproduction battery.
    Reproduce {
        /// Run only the checks with this id or section.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

struct Report {
    text: String,
    json: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            code: 0,
        }
    }
}

type CmdResult = Result<Report, Error>;

fn quat(s: &str) -> Result<Quaternion, Error> {
    s.parse()
}

fn element(s: &str) -> Result<GroupElement, Error> {
    reduce_canonical(&quat(s)?)
}

fn presentation(pair: &Pair) -> Result<Presentation, Error> {
    check_prime_pair(pair.p, pair.l)?;
    build_squares(pair.p, pair.l)
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Genset { q } => genset(q),
        Command::Present { pair } => present(&pair),
        Command::Classify { pair, a, b, scan } => classify(&pair, &a, &b, scan),
        Command::Centralizer { pair, b } => centralizer(&pair, &b),
        Command::Index {
            pair,
            subgens,
            words,
            max_cosets,
            table,
        } => index(
            &pair,
            subgens.as_deref(),
            words.as_deref(),
            max_cosets,
            table,
        ),
        Command::VerifyRelation { pair, x, y, word } => verify(&pair, &x, &y, &word),
        Command::Factor { pair, x } => factor(&pair, &x),
        Command::So3 { x, axis_angle } => so3(&x, axis_angle),
        Command::PadicEmbed { pair, x, precision } => padic(&pair, &x, precision),
        Command::Normform { pair, word, order } => normform(&pair, &word, order),
        Command::NormSearch {
            n,
            pair,
            t_max,
            u_max,
            exp_max,
            include_zero,
        } => norm_search(n, &pair, t_max, u_max, exp_max, include_zero),
        Command::Reproduce {
            only,
            seed,
            samples,
        } => reproduce(only, seed, samples),
    }
}

fn genset(q: u64) -> CmdResult {
    let gs = GeneratorSet::new(q)?;
    let mut text = format!("X_{q}: {} elements\n", gs.elements().len());
    let mut letters = Vec::new();
    for (i, g) in gs.labels().iter().enumerate() {
        text.push_str(&format!("letter {}: {}\n", i + 1, g));
        letters.push(g.to_string());
    }
    let elements: Vec<String> = gs.element_quaternions().map(|x| x.to_string()).collect();
    text.push_str(&format!("elements: {}", elements.join(" ")));
    Ok(Report::ok(
        text,
        json!({ "q": q, "count": elements.len(), "letters": letters, "elements": elements }),
    ))
}

fn present(pair: &Pair) -> CmdResult {
    let pres = presentation(pair)?;
    check_link(&pres)?;
    let text = export_presentation(&pres, Format::Text);
    let json: Value =
        serde_json::from_str(&export_presentation(&pres, Format::Json)).expect("valid JSON export");
    Ok(Report::ok(text.trim_end().to_string(), json))
}

fn classify(pair: &Pair, a: &str, b: &str, scan: u32) -> CmdResult {
    check_prime_pair(pair.p, pair.l)?;
    let (a, b) = (element(a)?, element(b)?);
    let class = classify_pair(pair.p, pair.l, &a, &b)?;
    let powers = power_commute_scan(&a, &b, scan);
    let mut text = class.to_string();
    match powers {
        Some((r, s)) => text.push_str(&format!("\ncommuting powers: a^{r}, b^{s}")),
        None => text.push_str(&format!("\nno commuting powers up to {scan}")),
    }
    Ok(Report::ok(
        text,
        json!({
            "class": class,
            "commuting_powers": powers.map(|(r, s)| json!([r, s])),
            "scan_bound": scan,
        }),
    ))
}

fn centralizer(pair: &Pair, b: &str) -> CmdResult {
    let pres = presentation(pair)?;
    let rep = centralizer_is_cyclic(&pres, &element(b)?)?;
    let rho = match rep.rho_fixpoint_free {
        Some(true) => "fixpoint-free",
        Some(false) => "has fixed points",
        None => "not a single letter",
    };
    let text = format!(
        "{}\nrho_v(b): {rho}\nn(b) = {}, (-n/{}) = {}, (-n/{}) = {}",
        rep.certificate, rep.n_b, pair.p, rep.legendre_p, pair.l, rep.legendre_l
    );
    Ok(Report::ok(
        text,
        serde_json::to_value(&rep).expect("serializable"),
    ))
}

fn index(
    pair: &Pair,
    subgens: Option<&str>,
    words: Option<&str>,
    max_cosets: usize,
    table: Option<PathBuf>,
) -> CmdResult {
    let pres = presentation(pair)?;
    let mut gens = Vec::new();
    for s in subgens
        .into_iter()
        .flat_map(|s| s.split(';'))
        .map(str::trim)
    {
        if !s.is_empty() {
            gens.push(factor_quaternion(&quat(s)?, &pres)?);
        }
    }
    for s in words.into_iter().flat_map(|s| s.split(';')).map(str::trim) {
        if !s.is_empty() {
            gens.push(pres.parse_word(s)?);
        }
    }
    if gens.is_empty() {
        return Err(Error::Parse("no subgroup generators given".into()));
    }
    let t = todd_coxeter(&pres, &gens, max_cosets)?;
    let gen_words: Vec<String> = gens.iter().map(|w| w.to_string()).collect();
    if let (Some(path), true) = (&table, t.is_closed()) {
        let body = serde_json::to_string_pretty(&t.to_json()).expect("serializable");
        fs::write(path, body).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    let (text, code) = match t.index() {
        Some(n) => (format!("index {n}"), 0),
        None => (
            format!(
                "overflow: budget of {max_cosets} coset rows exhausted after {} definitions; index unknown",
                t.cosets_defined()
            ),
            2,
        ),
    };
    Ok(Report {
        text: format!("subgroup generators: {}\n{text}", gen_words.join(", ")),
        json: json!({
            "status": t.status(),
            "index": t.index(),
            "cosets_defined": t.cosets_defined(),
            "max_cosets": max_cosets,
            "subgens": gen_words,
        }),
        code: if t.status() == Status::Overflow {
            2
        } else {
            code
        },
    })
}

fn verify(pair: &Pair, x: &str, y: &str, word: &str) -> CmdResult {
    let pres = presentation(pair)?;
    let (x, y) = (quat(x)?, quat(y)?);
    let w: ExponentWord = word.parse()?;
    let out = verify_relation_in(&pres, &w, &x, &y)?;
    let so3 = relation_transfer_check(&w, &x, &y)?;
    let text = format!(
        "relation {} (length {})\nvalue: {}\nSO3: {}",
        if out.holds { "holds" } else { "fails" },
        w.len(),
        out.value,
        if so3 { "identity" } else { "not identity" }
    );
    Ok(Report::ok(
        text,
        json!({
            "holds": out.holds,
            "length": w.len(),
            "value": out.value.to_string(),
            "so3_identity": so3,
        }),
    ))
}

fn factor(pair: &Pair, x: &str) -> CmdResult {
    let pres = presentation(pair)?;
    let x = quat(x)?;
    let adm =
        is_admissible(&x, pair.p, pair.l).ok_or_else(|| Error::NotAdmissible(x.to_string()))?;
    let w = factor_quaternion(&x, &pres)?;
    let g = evaluate_word(&pres, &w)?;
    let (r, s) = adm.exponents();
    Ok(Report::ok(
        format!("{w}\ncanonical: {g}"),
        json!({ "word": w.to_string(), "length": w.len(), "canonical": g.to_string(), "r": r, "s": s }),
    ))
}

fn so3(x: &str, axis_angle: bool) -> CmdResult {
    let x = quat(x)?;
    let m = theta(&x)?;
    let mut text = m.to_string();
    let mut json = json!({ "matrix": m });
    if axis_angle {
        let aa = rotation_axis_angle(&x)?;
        let axis: Vec<String> = aa.axis.iter().map(|c| c.to_string()).collect();
        text.push_str(&format!(
            "\naxis: ({})\ncos omega: {}\ncos^2(omega/2): {}\nsign cos(omega/2): {}",
            axis.join(", "),
            aa.cos_omega,
            aa.cos_half_sq,
            aa.half_sign
        ));
        json["axis"] = json!(axis);
        json["cos_omega"] = json!(aa.cos_omega.to_string());
        json["cos_half_sq"] = json!(aa.cos_half_sq.to_string());
        json["half_sign"] = json!(aa.half_sign);
    }
    Ok(Report::ok(text, json))
}

fn padic(pair: &Pair, x: &str, precision: u32) -> CmdResult {
    check_prime_pair(pair.p, pair.l)?;
    let x = quat(x)?;
    let mut lines = Vec::new();
    let mut out = Vec::new();
    for q in [pair.p, pair.l] {
        let params = solve_cd(q, precision)?;
        let m = psi_matrix_mod_pk(&x, &params)?;
        lines.push(format!(
            "c = {}, d = {}\n{m}\ndet = {}",
            params.c,
            params.d,
            m.det()
        ));
        out.push(json!({
            "prime": q,
            "precision": precision,
            "c": params.c.to_string(),
            "d": params.d.to_string(),
            "matrix": m,
            "det": m.det().to_string(),
        }));
    }
    Ok(Report::ok(lines.join("\n"), Value::Array(out)))
}

fn normform(pair: &Pair, word: &str, order: OrderArg) -> CmdResult {
    let pres = presentation(pair)?;
    let w = pres.parse_word(word)?;
    let nf = match order {
        OrderArg::Ab => normalize_ab(&pres, &w)?,
        OrderArg::Ba => normalize_ba(&pres, &w)?,
    };
    let g = evaluate_word(&pres, &w)?;
    let part = |ls: &[quatlat_core::Letter]| pres.word(ls.to_vec()).to_string();
    Ok(Report::ok(
        format!("{nf}\ncanonical: {g}"),
        json!({
            "normal_form": nf.to_string(),
            "sigma_a": part(&nf.sigma_a),
            "sigma_b": part(&nf.sigma_b),
            "canonical": g.to_string(),
        }),
    ))
}

fn norm_search(n: u64, pair: &Pair, t_max: u64, u_max: u64, exp_max: u32, zero: bool) -> CmdResult {
    check_prime_pair(pair.p, pair.l)?;
    let bounds = NormFormBounds {
        t_max,
        u_max,
        exp_max,
        exponents: if zero {
            ExponentRange::IncludeZero
        } else {
            ExponentRange::Positive
        },
    };
    let w = norm_form_search(n, pair.p, pair.l, bounds);
    let mut text = format!(
        "{} witness(es) with t <= {t_max}, u <= {u_max}, r+s <= {exp_max}",
        w.len()
    );
    for x in &w {
        text.push_str(&format!("\nt={} u={} r={} s={}", x.t, x.u, x.r, x.s));
    }
    Ok(Report::ok(text, json!({ "witnesses": w })))
}

fn reproduce(only: Option<String>, seed: u64, samples: usize) -> CmdResult {
    let cfg = SuiteConfig {
        seed,
        samples,
        only,
        ..Default::default()
    };
    let results = run_suite(&cfg);
    if results.is_empty() {
        return Err(Error::Parse("no check matches the filter".into()));
    }
    let mut text = String::new();
    for r in &results {
        let mark = if r.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "[{mark}] {:<12} {:<10} {}: {}\n",
            r.id, r.section, r.title, r.detail
        ));
    }
    let passed = results.iter().filter(|r| r.passed).count();
    text.push_str(&format!("{passed}/{} checks passed", results.len()));
    Ok(Report {
        text,
        json: json!({ "seed": seed, "checks": results }),
        code: if passed == results.len() { 0 } else { 1 },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("serializable")
                );
            } else {
                println!("{}", report.text);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
