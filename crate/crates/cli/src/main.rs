use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use biframe::colimit::{coproduct, pushout, pushout_along_quotient, verify_pushout_square};
use biframe::density::{booleanization_frame, induced_booleanization_map, least_dense_subbilocale, skeletal_witness};
use biframe::dot::hasse_dot;
use biframe::io::{LatticeJson, PosetJson, ResultJson};
use biframe::label::render;
use biframe::oracle::{commuting_induced_maps, ExtremalOracle};
use biframe::subbilocale::{analyze, sublocale_lattice, subbilocale_lattice, Analysis};
use biframe::verify::{filter_is_known, run_with, Fixtures};
use biframe::workspace::{Hom, Object, Workspace};
use biframe::{Biframe, BiframeHom, Congruence, Frame, FrameHom, Lattice, Limits, Poset};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

/// Finite frames and biframes: coproducts, pushouts, sublocales,
/// subbilocales and least dense subbilocales.
#[derive(Parser)]
#[command(name = "biframe", version)]
struct Cli {
    /// Directory for JSON (and, with --dot, DOT) output files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also emit a Hasse diagram in Graphviz DOT.
    #[arg(long, global = true)]
    dot: bool,
    /// Print labels with ⊕, ∨, 𝔠, 𝔬 instead of ASCII.
    #[arg(long, global = true)]
    unicode: bool,
    /// Largest frame for which congruences or maps are enumerated.
    #[arg(long, global = true, env = "BIFRAME_CAP")]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and validate a frame, biframe or map.
    Build { reference: String },
    /// Coproduct of two frames.
    Coproduct { left: String, right: String },
    /// Lattice of sublocales of a frame.
    Sublocales { frame: String },
    /// Lattice of subbilocales of a biframe.
    Subbilocales { biframe: String },
    /// Booleanization of a frame, or least dense subbilocale of a biframe.
    Booleanize { object: String },
    /// Extremal epi–mono factorization of a biframe map.
    Factorize { hom: String },
    /// Whether a biframe map is an extremal epimorphism.
    ExtremalCheck {
        hom: String,
        /// Cross-check against the definitional search over monomorphisms.
        #[arg(long)]
        oracle: bool,
    },
    /// Whether a biframe map is skeletal.
    SkeletalCheck {
        hom: String,
        /// Count the maps of least dense subbilocales compatible with the map.
        #[arg(long)]
        oracle: bool,
    },
    /// Pushout of two maps with a common domain (ambient maps for biframes).
    Pushout { f: String, g: String },
    /// Run the acceptance criteria.
    VerifyPaper {
        /// A tag (figures, claims, density, closure, routes, extremal,
        /// functor), a criterion number, or a comma-separated list.
        #[arg(long)]
        filter: Option<String>,
        /// Directory with replacement reference lattices.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

/// A computed result: the summary line, the JSON envelope and a diagram.
struct Artifact {
    kind: &'static str,
    inputs: Vec<String>,
    provenance: BTreeMap<String, Value>,
    result: Value,
    diagram: Option<(String, Poset)>,
    summary: String,
    /// The computation itself detected a disagreement.
    failed: bool,
}

impl Artifact {
    fn new(kind: &'static str, inputs: &[&str], summary: String, result: Value) -> Artifact {
        Artifact {
            kind,
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            provenance: BTreeMap::new(),
            result,
            diagram: None,
            summary,
            failed: false,
        }
    }

    fn with(mut self, key: &str, value: Value) -> Artifact {
        self.provenance.insert(key.to_string(), value);
        self
    }

    fn drawing(mut self, name: &str, lattice: &Lattice) -> Artifact {
        self.diagram = Some((name.to_string(), lattice.poset().clone()));
        self
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let mut limits = Limits::default();
    if let Some(cap) = cli.cap {
        limits = limits.with_cap(cap);
    }
    let mut ws = Workspace::new(limits);
    let artifact = match &cli.command {
        Command::Build { reference } => build(&mut ws, reference)?,
        Command::Coproduct { left, right } => cmd_coproduct(&mut ws, left, right)?,
        Command::Sublocales { frame } => sublocales(&mut ws, frame)?,
        Command::Subbilocales { biframe } => subbilocales(&mut ws, biframe)?,
        Command::Booleanize { object } => booleanize(&mut ws, object)?,
        Command::Factorize { hom } => factorize(&mut ws, hom)?,
        Command::ExtremalCheck { hom, oracle } => extremal_check(&mut ws, hom, *oracle)?,
        Command::SkeletalCheck { hom, oracle } => skeletal_check(&mut ws, hom, *oracle)?,
        Command::Pushout { f, g } => cmd_pushout(&mut ws, f, g)?,
        Command::VerifyPaper { filter, fixtures } => verify_paper(cli, &limits, filter.as_deref(), fixtures.as_ref())?,
    };
    emit(cli, &artifact)?;
    Ok(!artifact.failed)
}

fn emit(cli: &Cli, a: &Artifact) -> Result<()> {
    println!("{}", render(&a.summary, cli.unicode));
    let dot = match (&a.diagram, cli.dot) {
        (Some((name, poset)), true) => Some(hasse_dot(name, poset, cli.unicode)),
        _ => None,
    };
    match &cli.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let envelope = ResultJson {
                kind: a.kind.to_string(),
                inputs: a.inputs.clone(),
                provenance: a.provenance.clone(),
                result: a.result.clone(),
            };
            let path = dir.join(format!("{}.json", a.kind));
            let text = serde_json::to_string_pretty(&envelope)? + "\n";
            std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            if let Some(dot) = dot {
                let path = dir.join(format!("{}.dot", a.kind));
                std::fs::write(&path, dot).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        None => {
            if let Some(dot) = dot {
                print!("{dot}");
            }
        }
    }
    Ok(())
}

fn lattice_json(l: &Lattice) -> Value {
    serde_json::to_value(LatticeJson::from_lattice(l)).expect("serializable")
}

fn poset_json(p: &Poset) -> Value {
    serde_json::to_value(PosetJson::from_poset(p)).expect("serializable")
}

fn blocks(c: &Congruence) -> Value {
    json!(c.blocks())
}

fn biframe_json(b: &Biframe) -> Value {
    json!({
        "name": b.name(),
        "ambient": poset_json(b.ambient().poset()),
        "comp1": b.component(0),
        "comp2": b.component(1),
    })
}

fn frame_hom_json(f: &FrameHom) -> Value {
    json!({ "dom": poset_json(f.dom().poset()), "cod": poset_json(f.cod().poset()), "map": f.map() })
}

fn biframe_hom_json(f: &BiframeHom) -> Value {
    json!({ "dom": f.dom().name(), "cod": f.cod().name(), "map": f.ambient_map().map() })
}

fn analysis_json(a: &Analysis) -> Value {
    json!({ "distributive": a.distributive, "coframe": a.coframe, "n5": a.pentagon, "m3": a.diamond })
}

fn analysis_summary(a: &Analysis) -> String {
    if a.distributive {
        return "distributive".into();
    }
    let mut s = String::from("not distributive");
    if let Some(w) = &a.pentagon {
        s += &format!(", N5 witness: {0} < {1} < {2} < {4} and {0} < {3} < {4}", w[0], w[1], w[2], w[3], w[4]);
    }
    if let Some(w) = &a.diamond {
        s += &format!(", M3 witness: {}", w.join(", "));
    }
    s + ", not a coframe"
}

fn biframe_map(ws: &mut Workspace, r: &str) -> Result<BiframeHom> {
    match ws.hom(r)? {
        Hom::Biframe(h) => Ok(h),
        Hom::Frame(_) => bail!("{r:?} is a frame map, expected a biframe map"),
    }
}

fn build(ws: &mut Workspace, r: &str) -> Result<Artifact> {
    Ok(match ws.resolve(r)? {
        Object::Frame(f) => {
            let boolean = if f.is_boolean() { ", Boolean" } else { "" };
            Artifact::new("build", &[r], format!("frame {r}: {} elements{boolean}", f.len()), poset_json(f.poset()))
                .with("object", json!("frame"))
                .drawing(r, f.lattice())
        }
        Object::Biframe(b) => {
            let summary = format!(
                "biframe {}: ambient {} elements, components of {} and {} elements",
                b.name(),
                b.ambient().len(),
                b.component(0).len(),
                b.component(1).len()
            );
            Artifact::new("build", &[r], summary, biframe_json(&b))
                .with("object", json!("biframe"))
                .drawing(b.name(), b.ambient().lattice())
        }
        Object::Hom(Hom::Frame(h)) => {
            let summary = format!("frame map: {} → {} elements", h.dom().len(), h.cod().len());
            Artifact::new("build", &[r], summary, frame_hom_json(&h)).with("object", json!("frame map"))
        }
        Object::Hom(Hom::Biframe(h)) => {
            let summary = format!("biframe map: {} → {}", h.dom().name(), h.cod().name());
            Artifact::new("build", &[r], summary, biframe_hom_json(&h)).with("object", json!("biframe map"))
        }
    })
}

fn cmd_coproduct(ws: &mut Workspace, left: &str, right: &str) -> Result<Artifact> {
    let (a, b) = (ws.frame(left)?, ws.frame(right)?);
    let c = coproduct(&a, &b, ws.limits())?;
    let summary = format!("coproduct {left} ⊕ {right}: {} elements", c.frame().len());
    let result = json!({
        "frame": lattice_json(c.frame().lattice()),
        "inj_left": c.inj_left().map(),
        "inj_right": c.inj_right().map(),
    });
    Ok(Artifact::new("coproduct", &[left, right], summary, result)
        .with("construction", json!("down-sets of the product of the join-irreducible posets"))
        .with("legs", json!(["inj_left", "inj_right"]))
        .drawing(&format!("{left}⊕{right}"), c.frame().lattice()))
}

fn sublocales(ws: &mut Workspace, r: &str) -> Result<Artifact> {
    let f = ws.frame(r)?;
    let sl = sublocale_lattice(&f, ws.limits())?;
    let a = analyze(sl.lattice());
    let summary = format!("sublocales of {r}: {} elements, {}", sl.len(), analysis_summary(&a));
    let kernels: Vec<Value> = sl.kernels().iter().map(blocks).collect();
    let result = json!({ "lattice": lattice_json(sl.lattice()), "kernels": kernels, "analysis": analysis_json(&a) });
    Ok(Artifact::new("sublocales", &[r], summary, result)
        .with("order", json!("reverse inclusion of kernels"))
        .drawing(&format!("S({r})"), sl.lattice()))
}

fn subbilocales(ws: &mut Workspace, r: &str) -> Result<Artifact> {
    let b = ws.biframe(r)?;
    let sl = subbilocale_lattice(&b)?;
    let a = analyze(sl.lattice());
    let summary = format!("subbilocales of {}: {} elements, {}", b.name(), sl.len(), analysis_summary(&a));
    let kernels: Vec<Value> = sl.kernels().iter().map(blocks).collect();
    let result = json!({
        "lattice": lattice_json(sl.lattice()),
        "kernels": kernels,
        "ambient_sublocales": sl.ambient().len(),
        "analysis": analysis_json(&a),
    });
    Ok(Artifact::new("subbilocales", &[r], summary, result)
        .with("construction", json!("fixed points of B_L, checked against meet-closure of induced subbilocales"))
        .drawing(&format!("S({})", b.name()), sl.lattice()))
}

fn booleanize(ws: &mut Workspace, r: &str) -> Result<Artifact> {
    match ws.resolve(r)? {
        Object::Frame(f) => booleanize_frame(ws, r, &f),
        Object::Biframe(b) => booleanize_biframe(r, &b),
        Object::Hom(_) => bail!("{r:?} is a map, expected a frame or biframe"),
    }
}

fn booleanize_frame(ws: &Workspace, r: &str, f: &Arc<Frame>) -> Result<Artifact> {
    let b = booleanization_frame(f);
    let kernel = Congruence::kernel(&b.beta);
    let label = sublocale_lattice(f, ws.limits())
        .ok()
        .and_then(|sl| sl.index_of(&kernel).map(|k| sl.lattice().label(k).to_string()));
    let mut summary = format!("𝔅({r}): {} elements", b.booleanized.len());
    if let Some(l) = &label {
        summary += &format!(", kernel {l}");
    }
    let result = json!({
        "booleanized": lattice_json(b.booleanized.lattice()),
        "beta": b.beta.map(),
        "kernel": blocks(&kernel),
        "label": label,
        "regular": b.regular,
    });
    Ok(Artifact::new("booleanize", &[r], summary, result)
        .with("construction", json!("regular elements a = a**"))
        .drawing(&format!("𝔅({r})"), b.booleanized.lattice()))
}

fn booleanize_biframe(r: &str, b: &Arc<Biframe>) -> Result<Artifact> {
    let bb = least_dense_subbilocale(b)?;
    let kernel = &bb.least_dense.kernel;
    let label = subbilocale_lattice(b).ok().and_then(|sl| sl.index_of(kernel).map(|k| sl.label(k).to_string()));
    let amb = bb.booleanized.ambient();
    let mut summary = format!("𝔅({}): ambient {} elements", b.name(), amb.len());
    if let Some(l) = &label {
        summary += &format!(", kernel {l}");
    }
    if *kernel != bb.congruence_i {
        summary += ", differs from the quotient by a ~ a** on components";
    }
    let result = json!({
        "booleanized": biframe_json(&bb.booleanized),
        "beta": bb.beta.ambient_map().map(),
        "kernel": blocks(kernel),
        "label": label,
        "congruence_i": blocks(&bb.congruence_i),
        "kernel_equals_congruence_i": *kernel == bb.congruence_i,
    });
    Ok(Artifact::new("booleanize", &[r], summary, result)
        .with("construction", json!("B_L closure of the kernel of the ambient Booleanization"))
        .with("congruence", blocks(kernel))
        .drawing(bb.booleanized.name(), amb.lattice()))
}

fn factorize(ws: &mut Workspace, r: &str) -> Result<Artifact> {
    let h = biframe_map(ws, r)?;
    let fact = h.factorize()?;
    let mid = fact.mid.ambient();
    let summary = format!(
        "{r} = e ∘ f̄ through {}: {} elements, e {}",
        fact.mid.name(),
        mid.len(),
        if fact.e.is_iso() { "iso" } else { "monic" }
    );
    let result = json!({
        "image": biframe_json(&fact.mid),
        "fbar": fact.fbar.ambient_map().map(),
        "e": fact.e.ambient_map().map(),
    });
    Ok(Artifact::new("factorize", &[r], summary, result)
        .with("construction", json!("pushout of f1 ⊕ f2 along the structure map of the domain"))
        .with("presentation", lattice_json(fact.presentation.frame().lattice()))
        .with("congruence", blocks(&fact.congruence))
        .drawing(fact.mid.name(), mid.lattice()))
}

fn extremal_check(ws: &mut Workspace, r: &str, oracle: bool) -> Result<Artifact> {
    let h = biframe_map(ws, r)?;
    let onto = [h.restriction(0).is_onto(), h.restriction(1).is_onto()];
    let extremal = h.is_extremal_epi()?;
    let reason = match (extremal, onto) {
        (true, _) => "components onto, pushout square certified".to_string(),
        (false, [false, _]) => "first component not onto".to_string(),
        (false, [_, false]) => "second component not onto".to_string(),
        (false, _) => "square is not a pushout".to_string(),
    };
    let mut summary = format!("extremal epi: {} ({reason})", if extremal { "yes" } else { "no" });
    let mut by_oracle = None;
    if oracle {
        let v = ExtremalOracle::new().is_extremal_epi(&h, ws.limits())?;
        summary += if v == extremal { "; definitional search agrees" } else { "; definitional search DISAGREES" };
        by_oracle = Some(v);
    }
    let result = json!({ "extremal_epi": extremal, "components_onto": onto, "oracle": by_oracle });
    let mut a = Artifact::new("extremal-check", &[r], summary, result).with("map", biframe_hom_json(&h));
    a.failed = by_oracle.is_some_and(|v| v != extremal);
    Ok(a)
}

fn skeletal_check(ws: &mut Workspace, r: &str, oracle: bool) -> Result<Artifact> {
    let h = biframe_map(ws, r)?;
    let witness = skeletal_witness(&h);
    let l0 = h.dom().ambient();
    let mut summary = match witness {
        None => "skeletal: yes".to_string(),
        Some(a) => format!("skeletal: no, f(a**) ≰ f(a)** at a = {}", l0.label(a)),
    };
    let mut induced = None;
    let mut commuting = None;
    if witness.is_none() || oracle {
        let (bl, bm) = (least_dense_subbilocale(h.dom())?, least_dense_subbilocale(h.cod())?);
        if witness.is_none() {
            induced = Some(induced_booleanization_map(&h, &bl, &bm)?.ambient_map().map().to_vec());
        }
        if oracle {
            let n = commuting_induced_maps(&h, &bl.beta, &bm.beta, ws.limits())?.len();
            summary += &format!("; {n} map(s) of least dense subbilocales commute with it");
            commuting = Some(n);
        }
    }
    let result = json!({
        "skeletal": witness.is_none(),
        "witness": witness.map(|a| l0.label(a).to_string()),
        "induced": induced,
        "commuting_maps": commuting,
    });
    Ok(Artifact::new("skeletal-check", &[r], summary, result).with("map", biframe_hom_json(&h)))
}

fn frame_map(ws: &mut Workspace, r: &str) -> Result<FrameHom> {
    Ok(match ws.hom(r)? {
        Hom::Frame(f) => f,
        Hom::Biframe(h) => h.ambient_map().clone(),
    })
}

fn cmd_pushout(ws: &mut Workspace, fr: &str, gr: &str) -> Result<Artifact> {
    let (f, g) = (frame_map(ws, fr)?, frame_map(ws, gr)?);
    // The leg out of the codomain of an onto map `q`, given the leg `leg`
    // out of the other codomain along `other`.
    let through = |q: &FrameHom, other: &FrameHom, leg: &FrameHom| -> Result<FrameHom> {
        let mut map = vec![0; q.cod().len()];
        for a in q.dom().elements() {
            map[q.apply(a)] = leg.apply(other.apply(a));
        }
        Ok(FrameHom::new(q.cod().clone(), leg.cod().clone(), map)?)
    };
    let (construction, congruence, leg_m, leg_n) = if f.is_onto() || g.is_onto() {
        let (q, other) = if f.is_onto() { (&f, &g) } else { (&g, &f) };
        let po = pushout_along_quotient(other, &Congruence::kernel(q))?;
        let leg_q = through(q, other, &po.projection)?;
        let (m, n) = if f.is_onto() { (leg_q, po.projection.clone()) } else { (po.projection.clone(), leg_q) };
        ("quotient of the other codomain by the transported kernel", po.congruence, m, n)
    } else {
        let sq = pushout(&f, &g, ws.limits())?;
        ("coproduct of the codomains modulo the generated congruence", sq.congruence, sq.leg_m, sq.leg_n)
    };
    let certified = verify_pushout_square(&f, &g, &leg_m, &leg_n, ws.limits())?;
    let corner = leg_m.cod().clone();
    let summary = format!(
        "pushout: corner {} elements, square {}",
        corner.len(),
        if certified { "certified" } else { "NOT certified" }
    );
    let result = json!({
        "corner": lattice_json(corner.lattice()),
        "leg_m": leg_m.map(),
        "leg_n": leg_n.map(),
        "certified": certified,
    });
    let mut a = Artifact::new("pushout", &[fr, gr], summary, result)
        .with("construction", json!(construction))
        .with("legs", json!({ "f": f.map(), "g": g.map() }))
        .with("congruence", blocks(&congruence))
        .drawing("pushout", corner.lattice());
    a.failed = !certified;
    Ok(a)
}

fn verify_paper(
    cli: &Cli,
    limits: &Limits,
    filter: Option<&str>,
    fixtures: Option<&PathBuf>,
) -> Result<Artifact> {
    if let Some(f) = filter {
        if !filter_is_known(f) {
            bail!("unknown filter {f:?}");
        }
    }
    let fixtures = match fixtures {
        Some(dir) => Fixtures::from_dir(dir).map_err(anyhow::Error::msg)?,
        None => Fixtures::builtin(),
    };
    let reports = run_with(&fixtures, filter, limits, |r| {
        let line = format!("{} [{}] {} — {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.title, r.detail);
        println!("{}", render(&line, cli.unicode));
    });
    let passed = reports.iter().filter(|r| r.passed).count();
    let summary = format!("{passed}/{} criteria passed", reports.len());
    let mut a = Artifact::new("verify-paper", &[], summary, serde_json::to_value(&reports)?)
        .with("filter", json!(filter));
    a.failed = passed != reports.len();
    Ok(a)
}
