//! `wittq`: structure maps and verification suites for the quantized Witt
//! algebra in characteristic 0 and its restricted analogues mod p.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wittq_core::exactnum::Prime;
use wittq_core::hopf0::{HopfParams, Mutation, Quantum, DEFAULT_ORDER};
use wittq_core::hopfp::{verify_bridge, HopfParamsP, QuantumP, TMode};
use wittq_core::json::{encode_element, encode_series, to_canonical, Tables};
use wittq_core::report::VerificationReport;
use wittq_core::text::{render, render_series};
use wittq_core::{ucdp, Error};

#[derive(Parser)]
#[command(name = "wittq", version, about = "Twist quantization of the Witt algebra and its reduction mod p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Deformed coproduct of a generator.
    Coproduct(Opts),
    /// Deformed antipode of a generator.
    Antipode(Opts),
    /// Counit of a generator.
    Counit(Opts),
    /// The twist F (characteristic 0 only).
    Twist(Opts),
    /// Semiclassical cobracket of L_k (characteristic 0 only).
    Cobracket(Opts),
    /// Δ, S and ε tables for every generator (characteristic p only).
    Tables(Opts),
    /// Run the verification suites.
    Verify(Opts),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Opts {
    /// Characteristic: 0, or p (with --p), or the prime itself.
    #[arg(long = "char", default_value = "0")]
    characteristic: String,
    /// The prime, when --char p.
    #[arg(long)]
    p: Option<u32>,
    /// Twist parameter i (nonzero).
    #[arg(long, allow_hyphen_values = true)]
    i: Option<i64>,
    /// Generator index k.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Truncation order in t (characteristic 0 only).
    #[arg(long)]
    order: Option<u32>,
    /// t in characteristic p: "symbolic" or a residue.
    #[arg(long)]
    t: Option<String>,
    /// Every nonzero i in 𝔽_p.
    #[arg(long)]
    all_i: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Corrupt one summand of the closed-form coproduct: flip-sign:L or bump:L.
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

enum Char {
    Zero,
    P(Prime),
}

impl Opts {
    fn characteristic(&self) -> Result<Char, Failure> {
        match self.characteristic.as_str() {
            "0" => {
                if self.p.is_some() || self.t.is_some() {
                    return usage("--p and --t apply only with --char p");
                }
                Ok(Char::Zero)
            }
            "p" => {
                let p = self.p.ok_or_else(|| Failure::Usage("--char p needs --p".into()))?;
                self.char_p(p)
            }
            other => {
                let p: u32 = other.parse().map_err(|_| Failure::Usage(format!("--char must be 0, p or a prime, not {other:?}")))?;
                if self.p.is_some_and(|q| q != p) {
                    return usage("--char and --p disagree");
                }
                self.char_p(p)
            }
        }
    }

    fn char_p(&self, p: u32) -> Result<Char, Failure> {
        if self.order.is_some() {
            return usage("--order applies only in characteristic 0");
        }
        let p = Prime::new(p)?;
        if p.get() > ucdp::MAX_MODULUS {
            return Err(Error::UnsupportedModulus(p.get()).into());
        }
        Ok(Char::P(p))
    }

    fn i(&self) -> Result<i64, Failure> {
        if self.all_i {
            return usage("--all-i applies only to verify in characteristic p");
        }
        self.i.ok_or_else(|| Failure::Usage("--i is required".into()))
    }

    fn k(&self) -> Result<i64, Failure> {
        self.k.ok_or_else(|| Failure::Usage("--k is required".into()))
    }

    fn mutation(&self) -> Result<Option<Mutation>, Failure> {
        let Some(fault) = &self.inject_fault else {
            return Ok(None);
        };
        let parsed = fault.split_once(':').and_then(|(kind, l)| {
            let l: u32 = l.parse().ok()?;
            match kind {
                "flip-sign" => Some(Mutation::FlipSign { l }),
                "bump" => Some(Mutation::BumpCoeff { l }),
                _ => None,
            }
        });
        parsed.map(Some).ok_or_else(|| Failure::Usage(format!("bad fault {fault:?}")))
    }

    fn params0(&self) -> Result<HopfParams, Failure> {
        let mut params = HopfParams::new(self.i()?, self.order.unwrap_or(DEFAULT_ORDER))?;
        if let Some(m) = self.mutation()? {
            params = params.with_mutation(m);
        }
        Ok(params)
    }

    fn t_modes(&self, p: Prime, allow_all: bool) -> Result<Vec<TMode>, Failure> {
        match self.t.as_deref() {
            None | Some("symbolic") => Ok(vec![TMode::Symbolic]),
            Some("all") if allow_all => {
                Ok(std::iter::once(TMode::Symbolic).chain((0..p.get()).map(|c| TMode::Specialized(p.elem(i64::from(c))))).collect())
            }
            Some(c) => {
                let c: i64 = c.parse().map_err(|_| Failure::Usage(format!("--t must be symbolic or a residue, not {c:?}")))?;
                Ok(vec![TMode::Specialized(p.elem(c))])
            }
        }
    }

    fn params_p(&self, p: Prime, i: i64, t: TMode) -> Result<HopfParamsP, Failure> {
        let mut params = HopfParamsP::new(p.get(), i, t)?;
        if let Some(m) = self.mutation()? {
            params = params.with_mutation(m);
        }
        Ok(params)
    }

    fn single_t(&self, p: Prime) -> Result<TMode, Failure> {
        Ok(self.t_modes(p, false)?[0])
    }
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn value(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }

    fn report(report: &VerificationReport) -> Self {
        Output {
            text: report.to_string(),
            json: serde_json::to_value(report).expect("reports serialize"),
            ok: report.passed(),
        }
    }
}

fn header0(map: &str, params: &HopfParams) -> Value {
    json!({ "map": map, "char": 0, "i": params.i, "order": params.order })
}

fn header_p(map: &str, params: &HopfParamsP) -> Value {
    json!({ "map": map, "char": params.p.get(), "i": params.i.to_string(), "t": params.t.to_string() })
}

fn with(mut head: Value, key: &str, v: Value) -> Value {
    head[key] = v;
    head
}

fn coproduct(o: &Opts) -> Result<Output, Failure> {
    let k = o.k()?;
    match o.characteristic()? {
        Char::Zero => {
            let params = o.params0()?;
            let d = Quantum::new(params).coproduct_closed(k);
            Ok(Output::value(render_series(&d), with(with(header0("coproduct", &params), "k", json!(k)), "value", encode_series(&d))))
        }
        Char::P(p) => {
            let params = o.params_p(p, o.i()?, o.single_t(p)?)?;
            let d = QuantumP::new(params).coproduct_p(p.elem(k));
            let k = p.elem(k).value();
            Ok(Output::value(render_series(&d), with(with(header_p("coproduct", &params), "k", json!(k)), "value", encode_series(&d))))
        }
    }
}

fn antipode(o: &Opts) -> Result<Output, Failure> {
    let k = o.k()?;
    match o.characteristic()? {
        Char::Zero => {
            let params = o.params0()?;
            let s = Quantum::new(params).antipode_closed(k);
            Ok(Output::value(render_series(&s), with(with(header0("antipode", &params), "k", json!(k)), "value", encode_series(&s))))
        }
        Char::P(p) => {
            let params = o.params_p(p, o.i()?, o.single_t(p)?)?;
            let s = QuantumP::new(params).antipode_p(p.elem(k));
            let k = p.elem(k).value();
            Ok(Output::value(render_series(&s), with(with(header_p("antipode", &params), "k", json!(k)), "value", encode_series(&s))))
        }
    }
}

fn counit(o: &Opts) -> Result<Output, Failure> {
    let k = o.k()?;
    let (value, k, characteristic) = match o.characteristic()? {
        Char::Zero => {
            let x = wittq_core::uwitt::UWitt::new().element(k);
            (wittq_core::hopf0::counit(&x).to_string(), k, 0)
        }
        Char::P(p) => {
            let alg = ucdp::RestrictedWitt::new(p)?;
            (wittq_core::hopfp::counit_p(&alg.d(k), p).to_string(), i64::from(p.elem(k).value()), p.get())
        }
    };
    Ok(Output::value(value.clone(), json!({ "map": "counit", "char": characteristic, "k": k, "value": value })))
}

fn twist(o: &Opts) -> Result<Output, Failure> {
    let Char::Zero = o.characteristic()? else {
        return usage("twist is defined in characteristic 0 only");
    };
    let params = o.params0()?;
    let f = Quantum::new(params).twist();
    Ok(Output::value(render_series(&f), with(header0("twist", &params), "value", encode_series(&f))))
}

fn cobracket(o: &Opts) -> Result<Output, Failure> {
    let Char::Zero = o.characteristic()? else {
        return usage("cobracket is defined in characteristic 0 only");
    };
    let k = o.k()?;
    let params = HopfParams::new(o.i()?, 1)?;
    match Quantum::new(params).cobracket_semiclassical(k) {
        Ok(delta) => {
            let head = json!({ "map": "cobracket", "char": 0, "i": params.i, "k": k });
            Ok(Output::value(render(&delta), with(head, "value", encode_element(&delta))))
        }
        Err(e) => {
            eprintln!("{e}");
            Err(Failure::Verification)
        }
    }
}

fn tables(o: &Opts) -> Result<Output, Failure> {
    let Char::P(p) = o.characteristic()? else {
        return usage("tables are produced in characteristic p only");
    };
    let params = HopfParamsP::new(p.get(), o.i()?, o.single_t(p)?)?;
    let tables = Tables::compute(params);
    let mut text = String::new();
    for (k, d) in &tables.coproduct {
        text += &format!("Δ(D_{k}) =\n{}\n", render_series(d));
    }
    for (k, s) in &tables.antipode {
        text += &format!("S(D_{k}) =\n{}\n", render_series(s));
    }
    for (k, c) in &tables.counit {
        text += &format!("ε(D_{k}) = {c}\n");
    }
    Ok(Output::value(text.trim_end().to_string(), tables.to_json()))
}

const KS0: [i64; 7] = [-3, -2, -1, 0, 1, 2, 3];

fn verify(o: &Opts) -> Result<Output, Failure> {
    let mut report = VerificationReport::new();
    match o.characteristic()? {
        Char::Zero => {
            let q = Quantum::new(o.params0()?);
            report.extend(q.cocycle_check());
            report.extend(q.verify_coproduct_routes(&KS0));
            report.extend(q.verify_antipode_routes(&KS0));
            report.extend(q.verify_hopf0(&KS0));
            if q.params.order >= 1 {
                report.extend(q.verify_semiclassical(&KS0));
            }
        }
        Char::P(p) => {
            let is: Vec<i64> = if o.all_i {
                if o.i.is_some() {
                    return usage("--i and --all-i are exclusive");
                }
                (1..i64::from(p.get())).collect()
            } else {
                vec![o.i.ok_or_else(|| Failure::Usage("--i or --all-i is required".into()))?]
            };
            let alg = ucdp::RestrictedWitt::new(p)?;
            for i in is {
                for t in o.t_modes(p, true)? {
                    let q = QuantumP::with_algebra(o.params_p(p, i, t)?, alg.clone());
                    report.extend(q.verify_relations_preserved());
                    report.extend(q.verify_hopf_p());
                }
                let q = QuantumP::with_algebra(o.params_p(p, i, TMode::Symbolic)?, alg.clone());
                report.extend(q.radford_check());
            }
            report.extend(verify_bridge(p));
            report.extend(ucdp::verify_witt_iso(p)?);
            report.extend(ucdp::verify_derivation_model(p));
            report.extend(ucdp::verify_p_power(&alg));
        }
    }
    Ok(Output::report(&report))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(n) = std::env::var("WITTQ_THREADS") else {
        return Ok(());
    };
    let n: usize = n.parse().ok().filter(|&n| n > 0).ok_or_else(|| Failure::Usage(format!("WITTQ_THREADS must be a positive integer, not {n:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    configure_threads()?;
    let (opts, out) = match &cli.command {
        Command::Coproduct(o) => (o, coproduct(o)?),
        Command::Antipode(o) => (o, antipode(o)?),
        Command::Counit(o) => (o, counit(o)?),
        Command::Twist(o) => (o, twist(o)?),
        Command::Cobracket(o) => (o, cobracket(o)?),
        Command::Tables(o) => (o, tables(o)?),
        Command::Verify(o) => (o, verify(o)?),
    };
    let body = match opts.format {
        Format::Text => out.text,
        Format::Json => to_canonical(&out.json),
    };
    match &opts.output {
        Some(path) => std::fs::write(path, body + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => match writeln!(std::io::stdout(), "{body}") {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => return usage(format!("stdout: {e}")),
            _ => {}
        },
    }
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) | Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("wittq: {msg}");
            ExitCode::from(2)
        }
    }
}
