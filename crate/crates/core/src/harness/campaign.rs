use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{FieldSpec, Mat};
use crate::building::{fixed_point_subcomplex, Ambient, Flag, SubComplex};
use crate::error::{Error, Result};
use crate::grouplat::{
    closure, invariant_lattice_of, is_normal_in, GroupClosure, GroupSpec, InvLattice, DEFAULT_AMBIENT_CAP,
    DEFAULT_CLOSURE_CAP,
};
use crate::par::{self, Exec};
use crate::theorems::{
    borel_tits_demo, check_convex, check_fixed_point_form, check_normal_overgroup, find_centre,
    g_cr_verdicts_from, is_g_cr, loewy_centres, verify_serre_question, x_cr, CentreSummary, GcrVerdicts,
};
use crate::topology::{reduced_homology, HomologyReport};

use super::cache::{Cache, CacheKey};
use super::catalog::{CatalogEntry, PairSpec};

pub const SCHEMA_VERSION: u32 = 1;

/// Checks run on every entry, in report order.
pub const ENTRY_CHECKS: [&str; 9] = [
    "convex",
    "dichotomy",
    "g_cr",
    "centre",
    "loewy",
    "fixed_point_form",
    "borel_tits",
    "serre_cyclic",
    "expected",
];

/// Checks run on every designated pair.
pub const PAIR_CHECKS: [&str; 3] = ["serre", "loewy", "overgroup"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignConfig {
    pub cap_closure: usize,
    pub cap_ambient: u128,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub budget_secs: u64,
    /// Check inheritance for every normal cyclic subgroup of each entry.
    pub auto_serre: bool,
    /// Entries above this order skip the cyclic inheritance check.
    pub auto_serre_max_order: usize,
    #[serde(skip)]
    pub cache: Option<Cache>,
    #[serde(skip)]
    pub exec: Exec,
}

impl PartialEq for Cache {
    fn eq(&self, other: &Self) -> bool {
        self.root() == other.root()
    }
}
impl Eq for Cache {}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            cap_closure: DEFAULT_CLOSURE_CAP,
            cap_ambient: DEFAULT_AMBIENT_CAP,
            seed: 0,
            workers: None,
            budget_secs: 60,
            auto_serre: true,
            auto_serre_max_order: 2048,
            cache: None,
            exec: Exec::default(),
        }
    }
}

impl CampaignConfig {
    /// Hash of everything that can change a verdict.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION"));
        h.update(SCHEMA_VERSION.to_le_bytes());
        h.update((self.cap_closure as u64).to_le_bytes());
        h.update(self.cap_ambient.to_le_bytes());
        for (q, poly) in field_polynomials() {
            h.update(format!("{q}:{poly};"));
        }
        hex::encode(h.finalize())[..16].to_string()
    }
}

/// Result of one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
    /// Two independent computations of the same property disagree.
    Disagreement(String),
}

impl Outcome {
    fn skip(why: &str) -> Self {
        Outcome::Skip(why.to_string())
    }
    fn from_error(e: &Error) -> Self {
        match e {
            Error::OracleDisagreement(m) => Outcome::Disagreement(m.clone()),
            other => Outcome::Fail(other.to_string()),
        }
    }
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoewyFlags {
    pub socle: Flag,
    pub radical: Flag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryRecord {
    pub name: String,
    pub q: u32,
    pub n: usize,
    pub tags: Vec<String>,
    pub order: Option<usize>,
    pub lattice_size: Option<usize>,
    /// Simplices of `X^H` by degree.
    pub simplex_counts: Vec<usize>,
    pub convex: Option<bool>,
    pub g_cr: Option<GcrVerdicts>,
    pub contractible: Option<bool>,
    pub reduced_betti: Option<Vec<usize>>,
    pub centre: Option<CentreSummary>,
    pub loewy: Option<LoewyFlags>,
    pub error: Option<String>,
    pub checks: BTreeMap<String, Outcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub normal: String,
    pub over: String,
    pub checks: BTreeMap<String, Outcome>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub entries: usize,
    pub pairs: usize,
    pub checks: usize,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub disagreement: usize,
    /// Per check name: `[pass, fail, skip, disagreement]`.
    pub by_check: BTreeMap<String, [usize; 4]>,
}

impl Summary {
    pub fn is_clean(&self) -> bool {
        self.fail == 0 && self.disagreement == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    pub total_ms: u64,
    pub entries_ms: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub schema: u32,
    pub version: String,
    pub fingerprint: String,
    pub seed: u64,
    pub config: CampaignConfig,
    /// Defining polynomials of the non-prime fields, lowest degree first.
    pub fields: BTreeMap<String, String>,
    pub records: Vec<EntryRecord>,
    pub pair_records: Vec<PairRecord>,
    pub summary: Summary,
    pub timings: Timings,
}

impl CampaignReport {
    /// Everything except timings, as canonical JSON.
    pub fn verdict_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("timings");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn record(&self, name: &str) -> Option<&EntryRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

fn field_polynomials() -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for q in crate::algebra::SUPPORTED_ORDERS {
        if let Some(coeffs) = FieldSpec::modulus(q as u8) {
            let terms: Vec<String> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| {
                    let mono = match i {
                        0 => String::new(),
                        1 => "t".into(),
                        _ => format!("t^{i}"),
                    };
                    match (c, mono.is_empty()) {
                        (_, true) => c.to_string(),
                        (1, false) => mono,
                        _ => format!("{c}{mono}"),
                    }
                })
                .collect();
            out.insert(format!("F_{q}"), terms.join(" + "));
        }
    }
    out
}

struct Prepared {
    spec: GroupSpec,
    group: GroupClosure,
    lattice: InvLattice,
    y: SubComplex,
    homology: Option<HomologyReport>,
}

struct Runner<'a> {
    config: &'a CampaignConfig,
    fingerprint: String,
    ambients: HashMap<(u32, usize), std::result::Result<Arc<Ambient>, String>>,
}

impl Runner<'_> {
    fn ambient(&self, q: u32, n: usize) -> std::result::Result<&Arc<Ambient>, String> {
        match self.ambients.get(&(q, n)) {
            Some(Ok(a)) => Ok(a),
            Some(Err(e)) => Err(e.clone()),
            None => Err("no ambient".into()),
        }
    }

    fn closure(&self, spec: &GroupSpec) -> GroupClosure {
        let compute = || closure(spec, self.config.cap_closure);
        let Some(cache) = &self.config.cache else { return compute() };
        let key = CacheKey::new("closure", spec.field().q as u32, spec.n(), spec.generators(), &self.fingerprint);
        if let Some(enc) = cache.load::<Vec<String>>(&key) {
            let decoded: Option<Vec<Mat>> = enc
                .iter()
                .map(|s| hex::decode(s).ok().and_then(|b| Mat::new(spec.field(), spec.n(), b).ok()))
                .collect();
            if let Some(elems) = decoded {
                return GroupClosure::from_elements(spec.field(), spec.n(), elems)
                    .with_generators(spec.generators().to_vec());
            }
            log::warn!("undecodable closure in cache for {}", spec.name);
        }
        let c = compute();
        if c.is_complete() {
            let enc: Vec<String> = c.elements().iter().map(|m| hex::encode(m.encode())).collect();
            if let Err(e) = cache.store(&key, &enc) {
                log::warn!("cache store failed: {e}");
            }
        }
        c
    }

    fn homology(&self, spec: &GroupSpec, y: &SubComplex) -> Result<Option<HomologyReport>> {
        if y.is_empty() {
            return Ok(None);
        }
        let compute = || reduced_homology(y);
        match &self.config.cache {
            None => compute().map(Some),
            Some(cache) => {
                let key =
                    CacheKey::new("homology", spec.field().q as u32, spec.n(), spec.generators(), &self.fingerprint);
                cache.get_or_compute(&key, compute).map(Some)
            }
        }
    }

    fn prepare(&self, entry: &CatalogEntry) -> Result<Prepared> {
        let spec = entry.spec()?;
        let group = self.closure(&spec);
        group.require_complete()?;
        let lattice = invariant_lattice_of(&group, &spec.name)?;
        let y = fixed_point_subcomplex(&lattice);
        let homology = self.homology(&spec, &y)?;
        Ok(Prepared { spec, group, lattice, y, homology })
    }

    fn run_entry(&self, entry: &CatalogEntry) -> (EntryRecord, u64) {
        let start = Instant::now();
        let budget = Duration::from_secs(self.config.budget_secs);
        let mut rec = EntryRecord {
            name: entry.name.clone(),
            q: entry.q,
            n: entry.n,
            tags: entry.tags.clone(),
            order: None,
            lattice_size: None,
            simplex_counts: Vec::new(),
            convex: None,
            g_cr: None,
            contractible: None,
            reduced_betti: None,
            centre: None,
            loewy: None,
            error: None,
            checks: BTreeMap::new(),
        };
        let p = match self.prepare(entry) {
            Ok(p) => p,
            Err(e) => {
                rec.error = Some(e.to_string());
                for c in ENTRY_CHECKS {
                    rec.checks.insert(c.into(), Outcome::skip("entry could not be prepared"));
                }
                return (rec, start.elapsed().as_millis() as u64);
            }
        };
        rec.order = Some(p.group.order());
        rec.lattice_size = Some(p.lattice.len());
        rec.simplex_counts = p.y.simplex_counts();
        rec.reduced_betti = p.homology.as_ref().map(|h| h.reduced_betti.clone());
        let ambient = self.ambient(entry.q, entry.n);
        let verdicts = g_cr_verdicts_from(&p.lattice, &p.y, p.homology.as_ref());
        rec.g_cr = Some(verdicts);
        let not_g_cr = !verdicts.building;
        rec.contractible = Some(!p.y.is_empty() && !x_cr(&p.y).is_x_cr);

        for &name in &ENTRY_CHECKS {
            let outcome = if start.elapsed() > budget {
                Outcome::skip("budget")
            } else {
                self.entry_check(name, entry, &p, &mut rec, ambient.as_ref().map(|a| a.as_ref()).map_err(|e| e.clone()), not_g_cr)
            };
            rec.checks.insert(name.into(), outcome);
        }
        (rec, start.elapsed().as_millis() as u64)
    }

    fn entry_check(
        &self,
        name: &str,
        entry: &CatalogEntry,
        p: &Prepared,
        rec: &mut EntryRecord,
        ambient: std::result::Result<&Ambient, String>,
        not_g_cr: bool,
    ) -> Outcome {
        let need_ambient = || ambient.clone().map_err(|e| Outcome::Skip(format!("ambient unavailable: {e}")));
        match name {
            "convex" => {
                let a = match need_ambient() {
                    Ok(a) => a,
                    Err(o) => return o,
                };
                let v = check_convex(&p.y, a);
                rec.convex = Some(v.convex);
                match v.counterexample {
                    None => Outcome::Pass,
                    Some((f, g, q)) => Outcome::Fail(format!("{q} fixed by the stabilizer of {f} and {g}")),
                }
            }
            "dichotomy" => {
                let Some(h) = &p.homology else {
                    return Outcome::Pass;
                };
                let cr = x_cr(&p.y).is_x_cr;
                if cr == h.is_acyclic() {
                    Outcome::Disagreement(format!(
                        "X-cr = {cr} but reduced Betti numbers are {:?}",
                        h.reduced_betti
                    ))
                } else {
                    Outcome::Pass
                }
            }
            "g_cr" => {
                let v = rec.g_cr.expect("set before checks");
                if v.agree() {
                    Outcome::Pass
                } else {
                    Outcome::Disagreement(format!(
                        "building = {}, not contractible = {}, semisimple = {}",
                        v.building, v.not_contractible, v.semisimple
                    ))
                }
            }
            "centre" => {
                if !not_g_cr {
                    return Outcome::skip("G-cr");
                }
                let a = match need_ambient() {
                    Ok(a) => a,
                    Err(o) => return o,
                };
                match find_centre(&p.spec, a) {
                    Ok(r) => {
                        rec.centre = Some(r.summary());
                        Outcome::Pass
                    }
                    Err(e) => Outcome::from_error(&e),
                }
            }
            "loewy" => {
                if !not_g_cr {
                    return Outcome::skip("G-cr");
                }
                match loewy_centres(&p.spec, &p.spec) {
                    Ok(r) => {
                        let proper = !r.socle_flag.is_empty() && !r.radical_flag.is_empty();
                        rec.loewy = Some(LoewyFlags { socle: r.socle_flag, radical: r.radical_flag });
                        if proper && r.k_stable {
                            Outcome::Pass
                        } else {
                            Outcome::Fail(format!("proper = {proper}, stable = {}", r.k_stable))
                        }
                    }
                    Err(e) => Outcome::from_error(&e),
                }
            }
            "fixed_point_form" => {
                let a = match need_ambient() {
                    Ok(a) => a,
                    Err(o) => return o,
                };
                let v = check_fixed_point_form(&p.y, a);
                if let Some(f) = v.counterexample {
                    return Outcome::Fail(format!("{f} fixed by the pointwise stabilizer but not in X^H"));
                }
                if !p.group.is_subset_of(&v.h) {
                    return Outcome::Fail("recovered stabilizer does not contain H".into());
                }
                Outcome::Pass
            }
            "borel_tits" => {
                if !entry.has_tag("unipotent") {
                    return Outcome::skip("not tagged unipotent");
                }
                let a = match need_ambient() {
                    Ok(a) => a,
                    Err(o) => return o,
                };
                match borel_tits_demo(&p.spec, a) {
                    Ok(_) => Outcome::Pass,
                    Err(e) => Outcome::from_error(&e),
                }
            }
            "serre_cyclic" => {
                if !self.config.auto_serre {
                    return Outcome::skip("disabled");
                }
                if p.group.order() > self.config.auto_serre_max_order {
                    return Outcome::skip("order above the cyclic inheritance limit");
                }
                match serre_cyclic(p) {
                    Ok((_, 0, _)) => Outcome::Pass,
                    Ok((checked, bad, _)) => Outcome::Fail(format!("{bad} of {checked} normal cyclic subgroups not G-cr")),
                    Err(e) => Outcome::from_error(&e),
                }
            }
            "expected" => match &entry.expected {
                None => Outcome::skip("no expectation"),
                Some(exp) => {
                    let v = rec.g_cr.expect("set before checks");
                    let mut bad = Vec::new();
                    let mut cmp = |what: &str, want: Option<String>, got: String| {
                        if let Some(w) = want {
                            if w != got {
                                bad.push(format!("{what}: expected {w}, got {got}"));
                            }
                        }
                    };
                    cmp("order", exp.order.map(|x| x.to_string()), p.group.order().to_string());
                    cmp("g_cr", exp.g_cr.map(|x| x.to_string()), v.building.to_string());
                    cmp("irreducible", exp.irreducible.map(|x| x.to_string()), v.irreducible.to_string());
                    cmp(
                        "contractible",
                        exp.contractible.map(|x| x.to_string()),
                        rec.contractible.unwrap_or(false).to_string(),
                    );
                    cmp("simplices", exp.simplices.map(|x| x.to_string()), p.y.len().to_string());
                    if bad.is_empty() {
                        Outcome::Pass
                    } else {
                        Outcome::Fail(bad.join("; "))
                    }
                }
            },
            other => unreachable!("unknown check {other}"),
        }
    }

    fn run_pair(&self, pair: &PairSpec, entries: &HashMap<&str, &CatalogEntry>) -> PairRecord {
        let mut rec = PairRecord { normal: pair.normal.clone(), over: pair.over.clone(), checks: BTreeMap::new() };
        let specs = (|| -> Result<(GroupSpec, GroupSpec)> {
            let get = |name: &str| {
                entries
                    .get(name)
                    .ok_or_else(|| Error::Catalog(format!("unknown entry '{name}'")))
                    .and_then(|e| e.spec())
            };
            Ok((get(&pair.normal)?, get(&pair.over)?))
        })();
        let (n, h) = match specs {
            Ok(s) => s,
            Err(e) => {
                for c in PAIR_CHECKS {
                    rec.checks.insert(c.into(), Outcome::Fail(e.to_string()));
                }
                return rec;
            }
        };
        let serre = verify_serre_question(&n, &h);
        let n_not_g_cr = matches!(serre, Ok(v) if !v.n_g_cr);
        rec.checks.insert(
            "serre".into(),
            match &serre {
                Ok(v) if v.consistent => Outcome::Pass,
                Ok(_) => Outcome::Fail("H is G-cr but N is not".into()),
                Err(e) => Outcome::from_error(e),
            },
        );
        let gated = |o: Outcome| if serre.is_err() { Outcome::skip("pair precondition failed") } else { o };
        let loewy = if !n_not_g_cr {
            Outcome::skip("N is G-cr")
        } else {
            match loewy_centres(&n, &h) {
                Ok(r) if r.k_stable => Outcome::Pass,
                Ok(_) => Outcome::Fail("Loewy flags not stable under the overgroup".into()),
                Err(e) => Outcome::from_error(&e),
            }
        };
        rec.checks.insert("loewy".into(), gated(loewy));
        let overgroup = if !n_not_g_cr {
            Outcome::skip("X^N not contractible")
        } else {
            match self.ambient(n.field().q as u32, n.n()) {
                Err(e) => Outcome::Skip(format!("ambient unavailable: {e}")),
                Ok(a) => match check_normal_overgroup(&n, &h, a) {
                    Ok(v) if v.k_in_complex_stabilizer && v.k_fixes_centre => Outcome::Pass,
                    Ok(v) => Outcome::Fail(format!(
                        "overgroup stabilizes X^N: {}, fixes centre: {}",
                        v.k_in_complex_stabilizer, v.k_fixes_centre
                    )),
                    Err(e) => Outcome::from_error(&e),
                },
            }
        };
        rec.checks.insert("overgroup".into(), gated(overgroup));
        rec
    }
}

/// Inheritance check for every normal cyclic subgroup of the entry's group.
/// Returns `(checked, violations, non_normal)`.
fn serre_cyclic(p: &Prepared) -> Result<(usize, usize, usize)> {
    let h_g_cr = is_g_cr(&p.spec)?;
    let mut seen = HashSet::new();
    let (mut checked, mut bad, mut non_normal) = (0, 0, 0);
    for g in p.group.elements() {
        let n = GroupSpec::new(format!("<{g}>"), p.spec.field(), p.spec.n(), vec![g.clone()])?;
        let c = closure(&n, DEFAULT_CLOSURE_CAP);
        if !seen.insert(c.canonical_key()) {
            continue;
        }
        if !is_normal_in(&c, &p.group)? {
            non_normal += 1;
            continue;
        }
        checked += 1;
        if h_g_cr && !is_g_cr(&n)? {
            bad += 1;
        }
    }
    Ok((checked, bad, non_normal))
}

/// Runs every check on every entry and pair. Individual failures are
/// recorded, never raised.
pub fn run_campaign(entries: &[CatalogEntry], pairs: &[PairSpec], config: &CampaignConfig) -> CampaignReport {
    let start = Instant::now();
    let mut shapes: Vec<(u32, usize)> = entries.iter().map(|e| (e.q, e.n)).collect();
    shapes.sort_unstable();
    shapes.dedup();
    let ambients = shapes
        .into_iter()
        .map(|(q, n)| {
            let a = crate::algebra::field_make(q)
                .and_then(|f| Ambient::general_linear(f, n, config.cap_ambient))
                .map_err(|e| e.to_string());
            ((q, n), a)
        })
        .collect();
    let runner = Runner { config, fingerprint: config.fingerprint(), ambients };
    let by_name: HashMap<&str, &CatalogEntry> = entries.iter().map(|e| (e.name.as_str(), e)).collect();
    let (results, pair_records) = par::with_workers(config.workers, || {
        let results = par::map(config.exec, entries, |e| runner.run_entry(e));
        let pair_records = par::map(config.exec, pairs, |p| runner.run_pair(p, &by_name));
        (results, pair_records)
    });
    let mut timings = Timings::default();
    let mut records = Vec::with_capacity(results.len());
    for (rec, ms) in results {
        timings.entries_ms.insert(rec.name.clone(), ms);
        records.push(rec);
    }
    records.sort_by(|a, b| a.name.cmp(&b.name));

    let mut summary = Summary { entries: records.len(), pairs: pair_records.len(), ..Default::default() };
    let all = records
        .iter()
        .flat_map(|r| r.checks.iter())
        .map(|(k, o)| (format!("entry.{k}"), o))
        .chain(pair_records.iter().flat_map(|r| r.checks.iter()).map(|(k, o)| (format!("pair.{k}"), o)));
    for (name, o) in all {
        let slot = summary.by_check.entry(name).or_default();
        summary.checks += 1;
        let i = match o {
            Outcome::Pass => 0,
            Outcome::Fail(_) => 1,
            Outcome::Skip(_) => 2,
            Outcome::Disagreement(_) => 3,
        };
        slot[i] += 1;
        *[&mut summary.pass, &mut summary.fail, &mut summary.skip, &mut summary.disagreement][i] += 1;
    }
    timings.total_ms = start.elapsed().as_millis() as u64;
    CampaignReport {
        schema: SCHEMA_VERSION,
        version: env!("CARGO_PKG_VERSION").into(),
        fingerprint: config.fingerprint(),
        seed: config.seed,
        config: config.clone(),
        fields: field_polynomials(),
        records,
        pair_records,
        summary,
        timings,
    }
}
