use std::collections::HashSet;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Mat};
use crate::error::{Error, Result};
use crate::grouplat::{closure, enumerate_gl, gl_generators, GroupClosure, GroupSpec, DEFAULT_CLOSURE_CAP};

/// Verdicts an entry is expected to produce; absent fields are not checked.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_cr: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contractible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub q: u32,
    pub n: usize,
    /// One matrix per generator, rows of element codes.
    pub generators: Vec<Vec<Vec<u32>>>,
    #[serde(default)]
    pub tags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

/// `normal` is a normal subgroup of `over`, both named catalog entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSpec {
    pub normal: String,
    pub over: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    #[serde(default)]
    pub pairs: Vec<PairSpec>,
}

impl CatalogEntry {
    pub fn from_group(name: impl Into<String>, field: Field, n: usize, gens: &[Mat], tags: Vec<String>) -> Self {
        CatalogEntry { name: name.into(), q: field.q as u32, n, generators: gens.iter().map(Mat::rows).collect(), tags, expected: None }
    }

    pub fn field(&self) -> Result<Field> {
        crate::algebra::field_make(self.q)
    }

    /// Parsed and validated generators.
    pub fn spec(&self) -> Result<GroupSpec> {
        let field = self.field().map_err(|e| Error::Catalog(format!("entry '{}': {e}", self.name)))?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, rows) in self.generators.iter().enumerate() {
            let m = Mat::from_rows(field, rows)
                .map_err(|e| Error::Catalog(format!("entry '{}': generator {i}: {e}", self.name)))?;
            if m.n() != self.n {
                return Err(Error::Catalog(format!(
                    "entry '{}': generator {i} is {}x{}, expected n = {}",
                    self.name,
                    m.n(),
                    m.n(),
                    self.n
                )));
            }
            if !m.is_invertible() {
                return Err(Error::Catalog(format!("entry '{}': generator {i} is singular", self.name)));
            }
            gens.push(m);
        }
        GroupSpec::new(self.name.clone(), field, self.n, gens)
            .map_err(|e| Error::Catalog(format!("entry '{}': {e}", self.name)))
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

impl Catalog {
    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn extend(&mut self, other: Catalog) {
        self.entries.extend(other.entries);
        self.pairs.extend(other.pairs);
    }

    /// Checks every entry and the pair references; names must be unique.
    pub fn validate(&self) -> Result<()> {
        let mut names = HashSet::new();
        for e in &self.entries {
            if !names.insert(e.name.as_str()) {
                return Err(Error::Catalog(format!("duplicate entry name '{}'", e.name)));
            }
            e.spec()?;
        }
        for (i, p) in self.pairs.iter().enumerate() {
            for name in [&p.normal, &p.over] {
                if !names.contains(name.as_str()) {
                    return Err(Error::Catalog(format!("pair {i}: unknown entry '{name}'")));
                }
            }
        }
        Ok(())
    }
}

/// Parses a catalog: either a bare array of entries or an object with
/// `entries` and `pairs`.
pub fn parse_catalog(text: &str) -> Result<Catalog> {
    let diag = |e: serde_json::Error| Error::Catalog(format!("line {}, column {}: {e}", e.line(), e.column()));
    let catalog = if text.trim_start().starts_with('[') {
        Catalog { entries: serde_json::from_str(text).map_err(diag)?, pairs: Vec::new() }
    } else {
        serde_json::from_str(text).map_err(diag)?
    };
    catalog.validate()?;
    Ok(catalog)
}

pub fn ingest_catalog(path: &Path) -> Result<Catalog> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_catalog(&text).map_err(|e| match e {
        Error::Catalog(m) => Error::Catalog(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Population to generate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenerateMode {
    /// One entry per distinct cyclic subgroup of `GL_n(F_q)`.
    AllCyclic,
    /// `count` subgroups, each generated by `k` uniformly random invertible matrices.
    Random { k: usize, count: usize },
    /// Borel, unipotent radical, torus, monomial group, Jordan blocks, scalars and the full group.
    NamedStandard,
}

fn prefix(field: Field, n: usize) -> String {
    format!("gl{n}f{}", field.q)
}

fn auto_tags(base: &[&str], group: &GroupClosure) -> Vec<String> {
    let mut tags: Vec<String> = base.iter().map(|s| s.to_string()).collect();
    if group.order() > 1 && group.elements().iter().all(Mat::is_unipotent) {
        tags.push("unipotent".into());
    }
    tags
}

/// Builds a test population. Output is a pure function of the arguments.
pub fn generate_catalog(field: Field, n: usize, mode: &GenerateMode, seed: u64, scan_cap: u128) -> Result<Catalog> {
    let pre = prefix(field, n);
    match mode {
        GenerateMode::AllCyclic => {
            let gl = enumerate_gl(field, n, scan_cap)?;
            let mut seen = HashSet::new();
            let mut entries = Vec::new();
            for g in gl.elements() {
                let spec = GroupSpec::new("", field, n, vec![g.clone()])?;
                let c = closure(&spec, DEFAULT_CLOSURE_CAP);
                if seen.insert(c.canonical_key()) {
                    let name = format!("{pre}-cyclic-{:05}", entries.len());
                    entries.push(CatalogEntry::from_group(name, field, n, std::slice::from_ref(g), auto_tags(&["cyclic"], &c)));
                }
            }
            Ok(Catalog { entries, pairs: Vec::new() })
        }
        GenerateMode::Random { k, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut entries = Vec::with_capacity(*count);
            for i in 0..*count {
                let gens: Vec<Mat> = (0..*k)
                    .map(|_| loop {
                        let entries: Vec<u8> = (0..n * n).map(|_| rng.gen_range(0..field.q)).collect();
                        let m = Mat::new(field, n, entries).expect("codes in range");
                        if m.is_invertible() {
                            break m;
                        }
                    })
                    .collect();
                let spec = GroupSpec::new("", field, n, gens.clone())?;
                let c = closure(&spec, DEFAULT_CLOSURE_CAP);
                let name = format!("{pre}-random{k}-{seed}-{i:04}");
                entries.push(CatalogEntry::from_group(name, field, n, &gens, auto_tags(&["random"], &c)));
            }
            Ok(Catalog { entries, pairs: Vec::new() })
        }
        GenerateMode::NamedStandard => Ok(named_standard(field, n)),
    }
}

fn named_standard(field: Field, n: usize) -> Catalog {
    let pre = prefix(field, n);
    // additive basis of F_q over F_p: codes p^i
    let basis: Vec<u8> = (0..field.e).map(|i| field.p.pow(i as u32)).collect();
    let mut unipotent = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for &c in &basis {
                unipotent.push(Mat::elementary(field, n, i, j, c));
            }
        }
    }
    let mut torus = Vec::new();
    if field.q > 2 {
        for i in 0..n {
            let mut d = vec![1u8; n];
            d[i] = field.primitive();
            torus.push(Mat::diagonal(field, &d));
        }
    }
    let identity = vec![Mat::identity(field, n)];
    let or_identity = |v: &Vec<Mat>| if v.is_empty() { identity.clone() } else { v.clone() };
    let borel: Vec<Mat> = torus.iter().chain(&unipotent).cloned().collect();
    let mut perms = Vec::new();
    if n > 1 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        perms.push(Mat::permutation(field, &swap));
        if n > 2 {
            let cycle: Vec<usize> = (0..n).map(|j| (j + 1) % n).collect();
            perms.push(Mat::permutation(field, &cycle));
        }
    }
    let monomial: Vec<Mat> = torus.iter().chain(&perms).cloned().collect();

    let mut named: Vec<(String, Vec<Mat>)> = vec![
        ("borel".into(), or_identity(&borel)),
        ("unipotent".into(), or_identity(&unipotent)),
        ("diagonal".into(), or_identity(&torus)),
        ("monomial".into(), or_identity(&monomial)),
        ("scalar".into(), vec![Mat::scalar(field, n, field.primitive())]),
        ("identity".into(), identity.clone()),
        ("gl".into(), gl_generators(field, n)),
    ];
    for k in 2..=n {
        let mut j = Mat::identity(field, n).entries().to_vec();
        for i in 0..k - 1 {
            j[i * n + i + 1] = 1;
        }
        named.push((format!("jordan{k}"), vec![Mat::new(field, n, j).expect("codes in range")]));
    }
    let entries = named
        .into_iter()
        .map(|(name, gens)| {
            let spec = GroupSpec::new("", field, n, gens.clone()).expect("valid generators");
            let c = closure(&spec, DEFAULT_CLOSURE_CAP);
            CatalogEntry::from_group(format!("{pre}-{name}"), field, n, &gens, auto_tags(&["standard"], &c))
        })
        .collect();
    let pair = |a: &str, b: &str| PairSpec { normal: format!("{pre}-{a}"), over: format!("{pre}-{b}") };
    let pairs = vec![
        pair("unipotent", "borel"),
        pair("diagonal", "monomial"),
        pair("scalar", "gl"),
        pair("identity", "borel"),
        pair(&format!("jordan{n}"), &format!("jordan{n}")),
    ];
    Catalog { entries, pairs }
}

/// Generated catalogs addressable by name: `gl{n}f{q}-all-cyclic`,
/// `gl{n}f{q}-named-standard` or `gl{n}f{q}-random2-{count}`.
pub fn bundled_catalog(name: &str, seed: u64) -> Option<Result<Catalog>> {
    let cap = crate::grouplat::DEFAULT_AMBIENT_CAP;
    let parse = |s: &str| -> Option<(Field, usize, GenerateMode)> {
        let (shape, mode) = s.split_once('-')?;
        let shape = shape.strip_prefix("gl")?;
        let (n, q) = shape.split_once('f')?;
        let field = crate::algebra::field_make(q.parse().ok()?).ok()?;
        let mode = match mode {
            "all-cyclic" => GenerateMode::AllCyclic,
            "named-standard" => GenerateMode::NamedStandard,
            _ => {
                let count = mode.strip_prefix("random2-")?.parse().ok()?;
                GenerateMode::Random { k: 2, count }
            }
        };
        Some((field, n.parse().ok()?, mode))
    };
    let (field, n, mode) = parse(name)?;
    Some(generate_catalog(field, n, &mode, seed, cap))
}
