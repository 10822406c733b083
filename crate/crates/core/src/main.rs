use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use sliceness::covers::cover_group;
use sliceness::etacalc::{l2_satellite, satellite_eta, zero_integral};
use sliceness::knotfile::{Knot, KnotFile};
use sliceness::linkform::{characters_vanishing, characters_vanishing_any, linking_form, metabolizers_bounded, Character};
use sliceness::metarep::build_rep;
use sliceness::obstruct::{fox_milnor, obstruct_knot, reproduce_example, Mode};
use sliceness::polyring::UnitCirclePoint;
use sliceness::seifert::SeifertSum;
use sliceness::serde_util::ratio;
use sliceness::{Error, Result};

#[derive(Parser)]
#[command(name = "sliceness", version, about = "Concordance obstructions from Seifert matrices and satellite data")]
struct Cli {
    /// Knot file merged over the bundled library.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest cover level swept.
    #[arg(long, global = true)]
    bound_k: Option<u32>,
    /// Largest cover group order accepted.
    #[arg(long, global = true)]
    bound_group: Option<u128>,
    /// Largest automatic character order.
    #[arg(long, global = true)]
    bound_order: Option<u64>,
    /// Largest root-of-unity order in the signature battery.
    #[arg(long, global = true)]
    bound_root: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CharArgs {
    #[arg(long)]
    k: u32,
    /// Character values, comma separated, in Z/order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    chi: Vec<u64>,
    #[arg(long)]
    order: u64,
    /// `p/q` turn, or `transcendental`.
    #[arg(long, default_value = "transcendental")]
    z: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the knots in the library.
    List,
    /// Normalized Alexander polynomial.
    Alexander { knot: String },
    /// Arf invariant from Δ(−1).
    Arf { knot: String },
    /// Fox–Milnor factorization test.
    Foxmilnor { knot: String },
    /// Levine–Tristram signatures.
    Signature {
        knot: String,
        /// Value at a single `p/q` turn.
        #[arg(long, conflicts_with_all = ["profile", "integral"])]
        at: Option<String>,
        /// Arcs and jump points over the whole circle.
        #[arg(long)]
        profile: bool,
        /// Integral of the signature over the circle.
        #[arg(long, conflicts_with = "profile")]
        integral: bool,
    },
    /// H_1 of the k-fold branched cover.
    Cover {
        knot: String,
        #[arg(long)]
        k: u32,
    },
    /// Linking form on H_1(L_k).
    Linking {
        knot: String,
        #[arg(long)]
        k: u32,
    },
    /// t-invariant metabolizers of the linking form.
    Metabolizers {
        knot: String,
        #[arg(long)]
        k: u32,
    },
    /// Characters of order dividing `--order`, vanishing on a metabolizer
    /// when one is chosen.
    Characters {
        knot: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        order: u64,
        #[arg(long)]
        metabolizer: Option<usize>,
        /// Accept character orders that are not prime powers.
        #[arg(long)]
        allow_non_prime_power: bool,
    },
    /// Metabelian representation α_(k, z, χ).
    Rep {
        knot: String,
        #[command(flatten)]
        c: CharArgs,
    },
    /// Eta invariant of a satellite at a character.
    EtaSatellite {
        knot: String,
        #[command(flatten)]
        c: CharArgs,
    },
    /// Metabelian L² eta invariant.
    L2 { knot: String },
    /// Run the obstruction battery and sweeps.
    Obstruct {
        knot: String,
        /// slice, ribbon, tensor or doubly.
        #[arg(long, default_value = "slice")]
        mode: String,
        /// Levels to sweep, comma separated.
        #[arg(long, value_delimiter = ',')]
        k: Vec<u32>,
        /// Character orders, comma separated.
        #[arg(long, value_delimiter = ',')]
        orders: Vec<u64>,
        /// Accept character orders that are not prime powers.
        #[arg(long)]
        allow_non_prime_power: bool,
    },
    /// Recompute a worked example and compare with published values.
    Reproduce {
        #[arg(long)]
        example: u32,
    },
}

struct Output {
    text: String,
    json: serde_json::Value,
    code: u8,
}

impl Output {
    fn new(text: String, json: serde_json::Value) -> Self {
        Output { text, json, code: 0 }
    }
}

fn to_json<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_z(s: &str) -> Result<UnitCirclePoint> {
    if s == "transcendental" {
        return Ok(UnitCirclePoint::transcendental());
    }
    ratio::parse(s)
        .map(UnitCirclePoint::from_ratio)
        .ok_or_else(|| Error::Parse(format!("expected p/q or 'transcendental', got '{s}'")))
}

fn sum_of<'a>(lib: &'a KnotFile, name: &str) -> Result<(SeifertSum, &'a Knot)> {
    let k = lib.knot(name)?;
    Ok((k.seifert_sum(name), k))
}

fn run(cli: &Cli) -> Result<Output> {
    let mut lib = KnotFile::bundled()?;
    if let Some(p) = &cli.file {
        let text = std::fs::read_to_string(p)?;
        lib = lib
            .merge(&text)
            .map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("{}: {m}", p.display())),
                e => e,
            })?;
    }
    if let (Some(t), Err(_)) = (lib.tolerance, std::env::var("SLICENESS_TOLERANCE")) {
        std::env::set_var("SLICENESS_TOLERANCE", t.to_string());
    }
    let mut cfg = lib.config.clone();
    if let Some(v) = cli.bound_k {
        cfg.max_k = v;
    }
    if let Some(v) = cli.bound_group {
        cfg.max_group = v;
    }
    if let Some(v) = cli.bound_order {
        cfg.max_order = v;
    }
    if let Some(v) = cli.bound_root {
        cfg.max_root = v;
    }
    let out = match &cli.cmd {
        Cmd::List => {
            let names: Vec<&String> = lib.knots.keys().collect();
            Output::new(names.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("\n"), json!(names))
        }
        Cmd::Alexander { knot } => {
            let (s, _) = sum_of(&lib, knot)?;
            let d = s.alexander();
            Output::new(d.to_string(), json!({ "knot": knot, "alexander": d }))
        }
        Cmd::Arf { knot } => {
            let (s, _) = sum_of(&lib, knot)?;
            let d = s.alexander();
            let arf = if s.arf_zero_solvable() { 0 } else { 1 };
            let at = d.eval_int(-1).to_string();
            Output::new(format!("Arf = {arf} (Δ(−1) = {at})"), json!({ "knot": knot, "arf": arf, "alexander_at_minus_one": at }))
        }
        Cmd::Foxmilnor { knot } => {
            let (s, _) = sum_of(&lib, knot)?;
            let fm = fox_milnor(&s)?;
            let text = match &fm.witness {
                Some(f) => format!("satisfied: Δ ≐ f(t)f(t⁻¹) with f = {f}"),
                None => "fails: Δ is not of the form f(t)f(t⁻¹)".to_string(),
            };
            Output::new(text, json!({ "knot": knot, "fox_milnor": fm }))
        }
        Cmd::Signature { knot, at, integral, .. } => {
            let (s, _) = sum_of(&lib, knot)?;
            if let Some(at) = at {
                let z = parse_z(at)?;
                let v = s.signature_at(&z)?;
                Output::new(format!("σ({z}) = {v}"), json!({ "knot": knot, "at": z, "signature": v }))
            } else if *integral {
                let v = s.integral()?;
                Output::new(format!("∫σ = {v}"), json!({ "knot": knot, "integral": v }))
            } else {
                let p = s.profile()?;
                let mut text = format!("{:<24}σ\n", "arc");
                for a in &p.arcs {
                    text.push_str(&format!("{:<24}{}\n", format!("({}, {})", a.start, a.end), a.value));
                }
                for pt in &p.points {
                    text.push_str(&format!("at {}: {}\n", pt.turn, pt.value));
                }
                Output::new(text.trim_end().to_string(), json!({ "knot": knot, "profile": p }))
            }
        }
        Cmd::Cover { knot, k } => {
            let (s, _) = sum_of(&lib, knot)?;
            let g = cover_group(&s.materialize(), *k)?;
            let text = if g.is_finite() {
                format!("H_1(L_{k}) = {:?}, order {}\nt = {:?}", g.factors, g.order().expect("finite"), g.t)
            } else {
                format!("H_1(L_{k}) is infinite (free rank {}, torsion {:?})", g.free_rank, g.factors)
            };
            Output::new(text, json!({ "knot": knot, "cover": g, "order": g.order().map(|o| o.to_string()) }))
        }
        Cmd::Linking { knot, k } => {
            let (s, _) = sum_of(&lib, knot)?;
            let f = linking_form(&s.materialize(), *k)?;
            let rows: Vec<String> = f
                .gram
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            Output::new(format!("H_1(L_{k}) = {:?}\n{}", f.factors(), rows.join("\n")), json!({ "knot": knot, "form": f }))
        }
        Cmd::Metabolizers { knot, k } => {
            let (s, _) = sum_of(&lib, knot)?;
            let f = linking_form(&s.materialize(), *k)?;
            let ms = metabolizers_bounded(&f, cfg.max_group)?;
            let mut text = format!("H_1(L_{k}) = {:?}: {} metabolizers", f.factors(), ms.len());
            for (i, m) in ms.iter().enumerate() {
                text.push_str(&format!("\n{i}: order {} generated by {:?}", m.order, m.generators));
            }
            Output::new(text, json!({ "knot": knot, "k": k, "factors": f.factors(), "metabolizers": ms }))
        }
        Cmd::Characters { knot, k, order, metabolizer, allow_non_prime_power } => {
            let (s, _) = sum_of(&lib, knot)?;
            let f = linking_form(&s.materialize(), *k)?;
            let chars = match metabolizer {
                Some(i) => {
                    let ms = metabolizers_bounded(&f, cfg.max_group)?;
                    let p = ms
                        .get(*i)
                        .ok_or_else(|| Error::Invalid(format!("metabolizer {i} of {}", ms.len())))?;
                    if *allow_non_prime_power {
                        characters_vanishing_any(&f, p, *order)?
                    } else {
                        characters_vanishing(&f, p, *order)?
                    }
                }
                None => Character::all(f.factors(), *order)?,
            };
            let text = chars
                .iter()
                .map(|c| format!("{:?} mod {} (order {})", c.values, c.modulus, c.order))
                .collect::<Vec<_>>()
                .join("\n");
            Output::new(format!("{} characters\n{text}", chars.len()), json!({ "knot": knot, "k": k, "characters": chars }))
        }
        Cmd::Rep { knot, c } => {
            let (s, _) = sum_of(&lib, knot)?;
            let g = cover_group(&s.materialize(), c.k)?;
            let chi = Character::new(&g.factors, c.order, c.chi.clone())?;
            let z = parse_z(&c.z)?;
            let rep = build_rep(c.k, &z, &chi, &g)?;
            let class = rep.classify();
            let gens: Vec<String> = (0..g.rank())
                .map(|i| {
                    let mut e = vec![0; g.rank()];
                    e[i] = 1;
                    rep.diag_part(&e).to_string()
                })
                .collect();
            let text = format!(
                "t ↦ {}\n{}\nirreducible: {}, in P_k^irr: {}, orbit size {}",
                rep.shift_part(),
                gens.iter().enumerate().map(|(i, m)| format!("h{i} ↦ {m}")).collect::<Vec<_>>().join("\n"),
                class.irreducible,
                class.in_pk_irr,
                class.orbit_size
            );
            Output::new(
                text,
                json!({ "knot": knot, "rep": rep, "shift": rep.shift_part(), "generators": gens, "classification": class }),
            )
        }
        Cmd::EtaSatellite { knot, c } => {
            let sat = lib.knot(knot)?.as_satellite()?;
            let form = linking_form(&sat.orbit.matrix, c.k)?;
            let chi = Character::new(form.factors(), c.order, c.chi.clone())?;
            let z = parse_z(&c.z)?;
            let eta = satellite_eta(&sat, &form, &chi, &z)?;
            let mut text = format!("η = {eta}");
            for a in &eta.assumptions {
                text.push_str(&format!("\nassuming: {a}"));
            }
            Output::new(text, json!({ "knot": knot, "eta": eta, "lower_bound": eta.lower_bound(), "upper_bound": eta.upper_bound() }))
        }
        Cmd::L2 { knot } => {
            let k = lib.knot(knot)?;
            let l2 = match k {
                Knot::Sum(s) => l2_satellite(Some(s.integral()?), &[])?,
                Knot::Satellite(sat) => {
                    let base = sat.orbit.slice.then(zero_integral);
                    let comps: Vec<(SeifertSum, bool)> = sat.stages.iter().map(|st| (st.companion.clone(), true)).collect();
                    l2_satellite(base, &comps)?
                }
            };
            let text = match &l2.value {
                Some(v) => format!("η⁽²⁾ = {v}"),
                None => "η⁽²⁾ unknown: no base value for the orbit".to_string(),
            };
            Output::new(text, json!({ "knot": knot, "l2": l2 }))
        }
        Cmd::Obstruct { knot, mode, k, orders, allow_non_prime_power } => {
            let mode: Mode = mode.parse()?;
            cfg.orders = orders.clone();
            cfg.allow_non_prime_power = *allow_non_prime_power;
            let kn = lib.knot(knot)?;
            let r = obstruct_knot(knot, &kn.seifert_sum(knot), &kn.as_satellite()?, mode, k, &cfg)?;
            let mut o = Output::new(r.to_string().trim_end().to_string(), to_json(&r));
            o.code = r.exit_code() as u8;
            o
        }
        Cmd::Reproduce { example } => {
            let r = reproduce_example(*example)?;
            let mut o = Output::new(r.to_string().trim_end().to_string(), to_json(&r));
            o.code = if r.checks_passed() { 0 } else { 1 };
            o
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(o) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&o.json).expect("json"));
            } else {
                println!("{}", o.text);
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
