//! The acceptance criteria: exact reproduction of the three reference
//! lattices and exhaustive property checks over the corpus.

use std::collections::{HashMap, HashSet};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use crate::biframe::{Biframe, BiframeHom};
use crate::builtin;
use crate::colimit::{coproduct, verify_pushout_square};
use crate::congruence::{all_congruences, Congruence};
use crate::corpus::Corpus;
use crate::density::{
    booleanization_frame, booleanization_pushout_kernel, congruence_i, induced_booleanization_map, least_dense_subbilocale,
    skeletal_check, BiframeBooleanization,
};
use crate::error::Error;
use crate::frame::FrameHom;
use crate::io::ReferenceLattice;
use crate::oracle::{commuting_induced_maps, ExtremalOracle};
use crate::subbilocale::{
    analyze, closure_bl, functor_s, generated_by_components, sublocale_lattice, subbilocale_lattice,
    SubbilocaleLattice,
};
use crate::Limits;

/// Expected labeled lattices, one JSON file each.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub sublocales_3: ReferenceLattice,
    pub coproduct_3_3: ReferenceLattice,
    pub subbilocales_3_3: ReferenceLattice,
}

const FIXTURE_FILES: [&str; 3] = ["sublocales-3.json", "coproduct-3-3.json", "subbilocales-3.3.json"];

impl Fixtures {
    /// The fixtures shipped with the crate.
    pub fn builtin() -> Fixtures {
        let parse = |s: &str| serde_json::from_str(s).expect("bundled fixture is valid");
        Fixtures {
            sublocales_3: parse(include_str!("../fixtures/sublocales-3.json")),
            coproduct_3_3: parse(include_str!("../fixtures/coproduct-3-3.json")),
            subbilocales_3_3: parse(include_str!("../fixtures/subbilocales-3.3.json")),
        }
    }

    /// Loads the three fixture files from `dir`.
    pub fn from_dir(dir: &Path) -> Result<Fixtures, String> {
        let load = |name: &str| -> Result<ReferenceLattice, String> {
            let path = dir.join(name);
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
        };
        Ok(Fixtures {
            sublocales_3: load(FIXTURE_FILES[0])?,
            coproduct_3_3: load(FIXTURE_FILES[1])?,
            subbilocales_3_3: load(FIXTURE_FILES[2])?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub tag: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// `(id, tag, title)` for every criterion.
pub const CRITERIA: [(u8, &str, &str); 12] = [
    (1, "figures", "sublocales of 3"),
    (2, "figures", "coproduct 3⊕3"),
    (3, "figures", "subbilocales of 3.3"),
    (4, "claims", "𝔬(a⊕1∨1⊕a) is not a subbilocale of 3.3"),
    (5, "density", "least dense subbilocale (biframe Isbell)"),
    (6, "closure", "B_L is monotone, inflationary, idempotent"),
    (7, "routes", "route agreements"),
    (8, "extremal", "extremal epi characterization"),
    (9, "density", "skeletal maps induce maps of Booleanizations"),
    (10, "functor", "functor laws and pushouts of extremal epis"),
    (11, "density", "least dense sublocale (frame Isbell)"),
    (12, "claims", "values of 𝔅(3.3) and 𝔅(3)"),
];

/// Whether criterion `id` with `tag` is selected by a filter: a tag, a
/// criterion number, or a comma-separated list of these.
pub fn selected(filter: Option<&str>, id: u8, tag: &str) -> bool {
    match filter {
        None => true,
        Some(f) => f.split(',').map(str::trim).any(|t| t == tag || t.parse::<u8>().ok() == Some(id)),
    }
}

/// Whether a filter selects at least one criterion.
pub fn filter_is_known(filter: &str) -> bool {
    CRITERIA.iter().any(|&(id, tag, _)| selected(Some(filter), id, tag))
}

type Outcome = Result<String, String>;

fn fail(e: Error) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Shared, lazily built data for the exhaustive criteria.
struct Context {
    limits: Limits,
    corpus: OnceLock<Result<Corpus, String>>,
    lattices: OnceLock<Result<Vec<SubbilocaleLattice>, String>>,
    booleanizations: OnceLock<Result<Vec<BiframeBooleanization>, String>>,
    functor: OnceLock<Result<Vec<Vec<usize>>, String>>,
    positions: OnceLock<HashMap<usize, usize>>,
}

impl Context {
    fn new(limits: Limits) -> Context {
        Context {
            limits,
            corpus: OnceLock::new(),
            lattices: OnceLock::new(),
            booleanizations: OnceLock::new(),
            functor: OnceLock::new(),
            positions: OnceLock::new(),
        }
    }

    fn corpus(&self) -> Result<&Corpus, String> {
        self.corpus.get_or_init(|| Corpus::build(&self.limits).map_err(fail)).as_ref().map_err(Clone::clone)
    }

    /// Position of a corpus biframe (by identity).
    fn index(&self, b: &Arc<Biframe>) -> Result<usize, String> {
        let c = self.corpus()?;
        let positions = self
            .positions
            .get_or_init(|| c.biframes.iter().enumerate().map(|(i, x)| (Arc::as_ptr(x) as usize, i)).collect());
        positions.get(&(Arc::as_ptr(b) as usize)).copied().ok_or_else(|| format!("{} is not a corpus biframe", b.name()))
    }

    fn lattices(&self) -> Result<&[SubbilocaleLattice], String> {
        self.lattices
            .get_or_init(|| {
                let c = self.corpus()?;
                c.biframes
                    .iter()
                    .map(|b| subbilocale_lattice(b).map_err(|e| format!("{}: {e}", b.name())))
                    .collect()
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    fn booleanizations(&self) -> Result<&[BiframeBooleanization], String> {
        self.booleanizations
            .get_or_init(|| {
                let c = self.corpus()?;
                c.biframes
                    .iter()
                    .map(|b| least_dense_subbilocale(b).map_err(|e| format!("{}: {e}", b.name())))
                    .collect()
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    /// `S(f)` for every corpus hom, as index maps.
    fn functor(&self) -> Result<&[Vec<usize>], String> {
        self.functor
            .get_or_init(|| {
                let c = self.corpus()?;
                let lats = self.lattices()?;
                c.homs
                    .iter()
                    .map(|f| {
                        let (i, j) = (self.index(f.dom())?, self.index(f.cod())?);
                        functor_s(f, &lats[i], &lats[j]).map_err(fail)
                    })
                    .collect()
            })
            .as_deref()
            .map_err(Clone::clone)
    }
}

/// Runs the selected criteria in order, calling `report` after each.
pub fn run_with(
    fixtures: &Fixtures,
    filter: Option<&str>,
    limits: &Limits,
    mut report: impl FnMut(&CriterionReport),
) -> Vec<CriterionReport> {
    let ctx = Context::new(*limits);
    let mut out = Vec::new();
    for &(id, tag, title) in &CRITERIA {
        if !selected(filter, id, tag) {
            continue;
        }
        let outcome = match id {
            1 => sublocales_of_three(fixtures, limits),
            2 => coproduct_of_threes(fixtures, limits),
            3 => subbilocales_of_three_three(fixtures, limits),
            4 => no_counterpart(limits),
            5 => biframe_isbell(&ctx),
            6 => closure_laws(&ctx),
            7 => route_agreements(&ctx),
            8 => extremal_characterization(&ctx),
            9 => skeletal_iff(&ctx),
            10 => functor_laws(&ctx),
            11 => frame_isbell(&ctx),
            _ => specific_values(fixtures, limits),
        };
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        let r = CriterionReport { id, tag, title, passed, detail };
        report(&r);
        out.push(r);
    }
    out
}

pub fn run(fixtures: &Fixtures, filter: Option<&str>, limits: &Limits) -> Vec<CriterionReport> {
    run_with(fixtures, filter, limits, |_| {})
}

fn three_three(limits: &Limits) -> Result<Arc<Biframe>, String> {
    builtin::biframe("biframe:3.3", limits).map(Arc::new).map_err(fail)
}

fn sublocales_of_three(fx: &Fixtures, limits: &Limits) -> Outcome {
    let s = sublocale_lattice(&Arc::new(builtin::chain(3)), limits).map_err(fail)?;
    ensure(s.len() == 4, || format!("expected 4 elements, got {}", s.len()))?;
    fx.sublocales_3.matches(s.lattice())?;
    Ok(format!("4 elements {:?}, covers match", s.lattice().labels()))
}

fn coproduct_of_threes(fx: &Fixtures, limits: &Limits) -> Outcome {
    let t = Arc::new(builtin::chain(3));
    let c = coproduct(&t, &t, limits).map_err(fail)?;
    let l = c.frame().lattice();
    ensure(l.len() == 6, || format!("expected 6 elements, got {}", l.len()))?;
    fx.coproduct_3_3.matches(l)?;
    Ok(format!("6 elements, {} covers match", l.covers().len()))
}

fn subbilocales_of_three_three(fx: &Fixtures, limits: &Limits) -> Outcome {
    let sl = subbilocale_lattice(&three_three(limits)?).map_err(fail)?;
    ensure(sl.len() == 10, || format!("expected 10 elements, got {}", sl.len()))?;
    fx.subbilocales_3_3.matches(sl.lattice())?;
    let a = analyze(sl.lattice());
    ensure(!a.distributive, || "reported distributive".into())?;
    ensure(!a.coframe, || "reported a coframe".into())?;
    let p = a.pentagon.ok_or("no N5 witness found")?;
    Ok(format!("10 elements, covers match; not distributive, not a coframe; N5: {}", p.join(", ")))
}

fn no_counterpart(limits: &Limits) -> Outcome {
    let b = three_three(limits)?;
    let s = b.ambient().clone();
    let x = s.index_of("a⊕1∨1⊕a").ok_or("no element a⊕1∨1⊕a")?;
    let o = Congruence::open(s.clone(), x);
    let closed = closure_bl(&b, &o).map_err(fail)?;
    ensure(closed != o, || "𝔬(a⊕1∨1⊕a) is a fixed point of B_L".into())?;
    let sl = subbilocale_lattice(&b).map_err(fail)?;
    ensure(sl.index_of(&o).is_none(), || "𝔬(a⊕1∨1⊕a) appears in S(3.3)".into())?;
    let k = sl.index_of(&closed).ok_or("B_L image is not a subbilocale")?;
    Ok(format!("B_L(𝔬(a⊕1∨1⊕a)) = {} ≠ 𝔬(a⊕1∨1⊕a)", sl.label(k)))
}

fn biframe_isbell(ctx: &Context) -> Outcome {
    let c = ctx.corpus()?;
    let lats = ctx.lattices()?;
    let bools = ctx.booleanizations()?;
    let mut dense = 0;
    for ((b, sl), bb) in c.biframes.iter().zip(lats).zip(bools) {
        let name = b.name();
        let i = &bb.least_dense.kernel;
        let k = sl.index_of(i).ok_or_else(|| format!("{name}: 𝔅L is not in S(L)"))?;
        ensure(bb.beta.is_dense(), || format!("{name}: β is not dense"))?;
        ensure(bb.beta.is_extremal_epi().map_err(fail)?, || format!("{name}: β is not an extremal epi"))?;
        for m in 0..sl.len() {
            let theta = sl.kernel(m);
            if !theta.is_dense() {
                continue;
            }
            dense += 1;
            ensure(theta.refines(i) && sl.lattice().leq(k, m), || {
                format!("{name}: 𝔅L ≰ dense subbilocale {}", sl.label(m))
            })?;
        }
    }
    Ok(format!("{} biframes, {dense} dense subbilocales, all above 𝔅L", c.biframes.len()))
}

fn closure_laws(ctx: &Context) -> Outcome {
    let c = ctx.corpus()?;
    let lats = ctx.lattices()?;
    let mut points = 0;
    for (b, sl) in c.biframes.iter().zip(lats) {
        let l = sl.ambient().lattice();
        let cl = sl.closure_map();
        let label = |i: usize| sl.ambient().label(i).to_string();
        for i in l.elements() {
            points += 1;
            ensure(l.leq(i, cl[i]), || format!("{}: not inflationary at {}", b.name(), label(i)))?;
            ensure(cl[cl[i]] == cl[i], || format!("{}: not idempotent at {}", b.name(), label(i)))?;
            for j in l.elements() {
                if l.leq(i, j) && !l.leq(cl[i], cl[j]) {
                    return Err(format!("{}: not monotone at {} ≤ {}", b.name(), label(i), label(j)));
                }
            }
        }
    }
    Ok(format!("{} biframes, {points} elements of S(L₀)", c.biframes.len()))
}

fn route_agreements(ctx: &Context) -> Outcome {
    let c = ctx.corpus()?;
    let lats = ctx.lattices()?;
    for f in &c.homs {
        let (img, iso) = f.image_via_rf().map_err(|e| format!("{} → {}: {e}", f.dom().name(), f.cod().name()))?;
        let fact = f.factorize().map_err(fail)?;
        ensure(iso.is_bijective() && img.len() == fact.mid.ambient().len(), || {
            format!("{} → {}: images differ", f.dom().name(), f.cod().name())
        })?;
    }
    for (b, sl) in c.biframes.iter().zip(lats) {
        let generated = generated_by_components(b, sl.ambient(), b.limits()).map_err(fail)?;
        let fixed: HashSet<usize> = sl.members().iter().copied().collect();
        ensure(generated == fixed, || format!("{}: fixed points differ from generated meets", b.name()))?;
    }
    let mut differ = Vec::new();
    for b in &c.biframes {
        if booleanization_pushout_kernel(b).map_err(fail)? != congruence_i(b) {
            differ.push(b);
        }
    }
    let n = c.biframes.len();
    let (a, cc) = (format!("(a) {} homs agree", c.homs.len()), format!("(c) {n} biframes agree"));
    match differ.first() {
        None => Ok(format!("{a}, (b) {n} biframes agree, {cc}")),
        Some(b) => {
            let l0 = b.ambient();
            let witness = (0..2)
                .flat_map(|i| b.component(i).iter().map(move |&x| (i, x)))
                .find(|&(i, x)| !b.in_component(i, l0.double_pseudocomplement(x)))
                .map(|(i, x)| {
                    let xx = l0.double_pseudocomplement(x);
                    format!(" ({}** = {} is not in component {})", l0.label(x), l0.label(xx), i + 1)
                })
                .unwrap_or_default();
            Err(format!(
                "{a}, {cc}; (b) I differs from the pushout kernel on {} of {n} biframes, first {}{witness}",
                differ.len(),
                b.name()
            ))
        }
    }
}

fn extremal_characterization(ctx: &Context) -> Outcome {
    let c = ctx.corpus()?;
    let mut oracle = ExtremalOracle::new();
    let mut extremal = 0;
    for f in &c.homs {
        let fast = f.is_extremal_epi().map_err(fail)?;
        let slow = oracle.is_extremal_epi(f, &ctx.limits).map_err(fail)?;
        ensure(fast == slow, || {
            format!("{} → {} {:?}: pushout test says {fast}, definition says {slow}", f.dom().name(), f.cod().name(), f.ambient_map().map())
        })?;
        extremal += usize::from(fast);
    }
    Ok(format!("{} homs, {extremal} extremal epis, all agree", c.homs.len()))
}

fn skeletal_iff(ctx: &Context) -> Outcome {
    let c = ctx.corpus()?;
    let bools = ctx.booleanizations()?;
    let hom_name = |f: &BiframeHom| format!("{} → {} {:?}", f.dom().name(), f.cod().name(), f.ambient_map().map());
    let mut skeletal = 0;
    let mut bad = Vec::new();
    let mut bad_at_i = 0;
    for f in &c.homs {
        let (bd, bc) = (&bools[ctx.index(f.dom())?], &bools[ctx.index(f.cod())?]);
        let found = commuting_induced_maps(f, &bd.beta, &bc.beta, &ctx.limits).map_err(fail)?;
        let skel = skeletal_check(f);
        skeletal += usize::from(skel);
        let ok = match induced_booleanization_map(f, bd, bc) {
            Ok(fhat) => skel && found.len() == 1 && &found[0] == fhat.ambient_map(),
            Err(Error::NotSkeletal(_)) => !skel && found.is_empty(),
            Err(_) => false,
        };
        if !ok {
            bad.push(hom_name(f));
            let differs = |b: &BiframeBooleanization| b.least_dense.kernel != b.congruence_i;
            bad_at_i += usize::from(differs(bd) || differs(bc));
        }
    }
    if bad.is_empty() {
        return Ok(format!("{} homs, {skeletal} skeletal, each with a unique induced map", c.homs.len()));
    }
    // For the report: the same equivalence with L₀/I in place of 𝔅L.
    let mut by_i = HashMap::new();
    let mut agree_i = 0;
    for f in &c.homs {
        let mut quotient = |b: &Arc<Biframe>| -> Result<BiframeHom, String> {
            let n = ctx.index(b)?;
            if let Some(q) = by_i.get(&n) {
                return Ok(Clone::clone(q));
            }
            let q = b.quotient(&bools[n].congruence_i).map_err(fail)?.1;
            by_i.insert(n, q.clone());
            Ok(q)
        };
        let (qd, qc) = (quotient(f.dom())?, quotient(f.cod())?);
        let found = commuting_induced_maps(f, &qd, &qc, &ctx.limits).map_err(fail)?;
        agree_i += usize::from(skeletal_check(f) == (found.len() == 1));
    }
    Err(format!(
        "{} of {} homs disagree, first {}; {bad_at_i} of them have an endpoint where 𝔅L is not L₀/I; \
         with L₀/I in place of 𝔅L, {agree_i} of {} agree",
        bad.len(),
        c.homs.len(),
        bad[0],
        c.homs.len()
    ))
}

fn functor_laws(ctx: &Context) -> Outcome {
    let c = ctx.corpus()?;
    let lats = ctx.lattices()?;
    let fs = ctx.functor()?;
    // (domain, codomain, map) packed into a u64: 16 bits per corpus index
    // and 3 bits per image, as small ambients have at most 6 elements
    let pack = |d: usize, c: usize, map: &mut dyn Iterator<Item = usize>| -> u64 {
        map.fold((d as u64) << 16 | c as u64, |acc, x| acc << 3 | x as u64)
    };
    ensure(c.small.iter().all(|b| b.ambient().len() <= 6) && c.biframes.len() < 1 << 16, || {
        "corpus too large to pack maps".into()
    })?;
    let mut ends = Vec::with_capacity(c.homs.len());
    let mut by_key = HashMap::new();
    let mut out_of: HashMap<usize, Vec<usize>> = HashMap::new();
    for (n, f) in c.homs.iter().enumerate() {
        let (d, e) = (ctx.index(f.dom())?, ctx.index(f.cod())?);
        ends.push((d, e));
        out_of.entry(d).or_default().push(n);
        by_key.insert(pack(d, e, &mut f.ambient_map().map().iter().copied()), n);
    }
    let mut identities = 0;
    for (n, f) in c.homs.iter().enumerate() {
        if Arc::ptr_eq(f.dom(), f.cod()) && f.ambient_map().map().iter().enumerate().all(|(i, &x)| i == x) {
            identities += 1;
            ensure(fs[n].iter().enumerate().all(|(i, &x)| i == x), || format!("S(id) ≠ id on {}", f.dom().name()))?;
        }
    }
    ensure(identities == c.small.len(), || format!("{identities} identities for {} biframes", c.small.len()))?;

    let mut pairs = 0usize;
    for (n, f) in c.homs.iter().enumerate() {
        let (d, mid) = ends[n];
        let fm = f.ambient_map().map();
        for &m in out_of.get(&mid).map(Vec::as_slice).unwrap_or(&[]) {
            let g = c.homs[m].ambient_map().map();
            let key = pack(d, ends[m].1, &mut fm.iter().map(|&x| g[x]));
            let hn = *by_key.get(&key).ok_or("composite is missing from the corpus")?;
            pairs += 1;
            if let Some(k) = (0..fs[n].len()).find(|&k| fs[hn][k] != fs[m][fs[n][k]]) {
                return Err(format!(
                    "S(g∘f) ≠ S(g)∘S(f) for {} → {} → {} at {}",
                    f.dom().name(),
                    f.cod().name(),
                    c.homs[m].cod().name(),
                    lats[d].label(k)
                ));
            }
        }
    }

    // reported, not asserted: whether each S(f) preserves binary meets and joins
    let (mut meets, mut joins) = (0, 0);
    for (n, (d, e)) in ends.iter().enumerate() {
        let (a, b, m) = (lats[*d].lattice(), lats[*e].lattice(), &fs[n]);
        let all = |op: &dyn Fn(&crate::Lattice, usize, usize) -> usize| {
            a.elements().all(|x| a.elements().all(|y| m[op(a, x, y)] == op(b, m[x], m[y])))
        };
        meets += usize::from(all(&|l, x, y| l.meet(x, y)));
        joins += usize::from(all(&|l, x, y| l.join(x, y)));
    }

    // The pushout of an extremal epi f along g depends on f only through
    // its kernel; each (kernel, g) is checked once, with the square built
    // from the first f having that kernel.
    let mut squares = 0;
    let mut extremal = 0;
    let mut seen = HashSet::new();
    let mut quotients = QuotientCache::new();
    for (n, f) in c.homs.iter().enumerate() {
        if !f.is_extremal_epi().map_err(fail)? {
            continue;
        }
        extremal += 1;
        let d = ends[n].0;
        let theta = Congruence::kernel(f.ambient_map());
        if !seen.insert((d, theta.reps().to_vec())) {
            continue;
        }
        for &m in out_of.get(&d).map(Vec::as_slice).unwrap_or(&[]) {
            let g = &c.homs[m];
            let name = || format!("{} ← {} → {}", f.cod().name(), f.dom().name(), g.cod().name());
            pushout_of_extremal(f, g, ends[m].1, &theta, &mut quotients, &ctx.limits)
                .map_err(|e| format!("{}: {e}", name()))?;
            squares += 1;
        }
    }
    Ok(format!(
        "{identities} identities, {pairs} composable pairs; {squares} pushouts of {} extremal-epi kernels \
         ({extremal} extremal epis), {} distinct pushed quotients, all extremal; \
         S(f) preserves binary meets for {meets} and joins for {joins} of {} maps",
        seen.len(),
        quotients.len(),
        c.homs.len()
    ))
}

/// Quotients of corpus biframes by pushed congruences, with whether the
/// projection is an extremal epi, keyed by (biframe, congruence).
type QuotientCache = HashMap<(usize, Vec<usize>), (Arc<Biframe>, BiframeHom, bool)>;

/// Pushes the extremal epi `f` along `g`, checks the square is a pushout of
/// ambient frames and that the new leg out of `g`'s codomain is extremal.
fn pushout_of_extremal(
    f: &BiframeHom,
    g: &BiframeHom,
    cod: usize,
    theta: &Congruence,
    cache: &mut QuotientCache,
    limits: &Limits,
) -> Result<(), String> {
    let pushed = theta.push_along(g.ambient_map());
    let key = (cod, pushed.reps().to_vec());
    if !cache.contains_key(&key) {
        let (corner, p) = g.cod().quotient(&pushed).map_err(fail)?;
        let extremal = p.is_extremal_epi().map_err(fail)?;
        cache.insert(key.clone(), (corner, p, extremal));
    }
    let (corner, p, extremal) = &cache[&key];
    let m0 = f.cod().ambient();
    let mut leg = vec![usize::MAX; m0.len()];
    for x in f.dom().ambient().elements() {
        leg[f.apply(x)] = p.apply(g.apply(x));
    }
    ensure(!leg.contains(&usize::MAX), || "extremal epi is not onto".into())?;
    let leg = FrameHom::new(m0.clone(), corner.ambient().clone(), leg).map_err(fail)?;
    let leg = BiframeHom::new(f.cod().clone(), corner.clone(), leg).map_err(fail)?;
    let is_pushout =
        verify_pushout_square(f.ambient_map(), g.ambient_map(), leg.ambient_map(), p.ambient_map(), limits)
            .map_err(fail)?;
    ensure(is_pushout, || "square is not a pushout".into())?;
    ensure(*extremal, || "pushed map is not an extremal epi".into())
}

fn frame_isbell(ctx: &Context) -> Outcome {
    let c = ctx.corpus()?;
    let mut checked = 0;
    for (name, f) in &c.frames {
        let b = booleanization_frame(f);
        ensure(b.beta.is_dense() && b.beta.is_onto(), || format!("{name}: β is not a dense quotient"))?;
        ensure(b.booleanized.is_boolean(), || format!("{name}: 𝔅L is not Boolean"))?;
        let kb = Congruence::kernel(&b.beta);
        for theta in all_congruences(f, &ctx.limits).map_err(fail)? {
            if theta.is_dense() {
                checked += 1;
                ensure(theta.refines(&kb), || format!("{name}: a dense sublocale lies below 𝔅L"))?;
            }
        }
    }
    Ok(format!("{} frames, {checked} dense sublocales, all above 𝔅L", c.frames.len()))
}

fn specific_values(fx: &Fixtures, limits: &Limits) -> Outcome {
    let two = builtin::chain(2);
    let b = three_three(limits)?;
    let s = b.ambient().clone();
    let bb = least_dense_subbilocale(&b).map_err(fail)?;
    ensure(bb.booleanized.ambient().lattice().is_isomorphic(two.lattice()), || {
        format!("𝔅(3.3) has {} elements", bb.booleanized.ambient().len())
    })?;
    let aa = s.index_of("a⊕a").ok_or("no element a⊕a")?;
    let kernel = &bb.least_dense.kernel;
    ensure(*kernel == Congruence::open(s.clone(), aa), || "kernel of β differs from 𝔬(a⊕a)".into())?;
    ensure(*kernel == bb.congruence_i, || "kernel of β differs from I".into())?;
    let sl = subbilocale_lattice(&b).map_err(fail)?;
    let k = sl.index_of(kernel).ok_or("𝔅(3.3) is not in S(3.3)")?;
    ensure(sl.label(k) == "𝔬(a⊕a)", || format!("𝔅(3.3) is labelled {}", sl.label(k)))?;
    ensure(fx.subbilocales_3_3.elements.iter().any(|e| e == "𝔬(a⊕a)"), || "reference lattice lacks 𝔬(a⊕a)".into())?;
    let b3 = booleanization_frame(&Arc::new(builtin::chain(3)));
    ensure(b3.booleanized.lattice().is_isomorphic(two.lattice()), || {
        format!("𝔅(3) has {} elements", b3.booleanized.len())
    })?;
    Ok("𝔅(3.3) ≅ 2 with kernel 𝔬(a⊕a); 𝔅(3) ≅ 2".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters() {
        assert!(selected(None, 3, "figures"));
        assert!(selected(Some("figures"), 2, "figures"));
        assert!(!selected(Some("figures"), 5, "density"));
        assert!(selected(Some("5,routes"), 5, "density"));
        assert!(filter_is_known("routes"));
        assert!(!filter_is_known("nonsense"));
    }

    #[test]
    fn corrupted_fixture_fails_only_its_criterion() {
        let mut fx = Fixtures::builtin();
        fx.subbilocales_3_3.covers.pop();
        let r = run(&fx, Some("figures"), &Limits::default());
        assert_eq!(r.len(), 3);
        assert!(r[0].passed && r[1].passed);
        assert!(!r[2].passed);
    }
}
