use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use flagfix::algebra::{field_make, span, Field, Mat};
use flagfix::building::{Flag, SubComplex};
use flagfix::grouplat::GroupSpec;
use flagfix::harness::ingest_catalog;
use serde_json::Value;

#[derive(Debug, Args, Clone)]
pub struct GroupArgs {
    /// Field order.
    #[arg(long)]
    pub q: Option<u32>,
    /// Dimension (inferred from the generators when omitted).
    #[arg(long)]
    pub n: Option<usize>,
    /// Generator as rows separated by ';' and entries by ',', e.g. "1,1;0,1". Repeatable.
    #[arg(long = "gens", value_name = "MATRIX")]
    pub gens: Vec<String>,
    /// Catalog JSON file supplying q, n and generators.
    #[arg(long, value_name = "PATH", conflicts_with = "gens")]
    pub gens_file: Option<PathBuf>,
    /// Entry of --gens-file to use (default: the first).
    #[arg(long, requires = "gens_file")]
    pub entry: Option<String>,
}

pub fn parse_matrix(field: Field, text: &str) -> Result<Mat> {
    let rows: Vec<Vec<u32>> = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<u32>().with_context(|| format!("bad entry {x:?} in matrix {text:?}")))
                .collect()
        })
        .collect::<Result<_>>()?;
    Mat::from_rows(field, &rows).with_context(|| format!("matrix {text:?}"))
}

impl GroupArgs {
    pub fn spec(&self) -> Result<GroupSpec> {
        if let Some(path) = &self.gens_file {
            let cat = ingest_catalog(path)?;
            let entry = match &self.entry {
                Some(name) => cat.get(name).ok_or_else(|| anyhow!("no entry '{name}' in {}", path.display()))?,
                None => cat.entries.first().ok_or_else(|| anyhow!("{} has no entries", path.display()))?,
            };
            if self.q.is_some_and(|q| q != entry.q) || self.n.is_some_and(|n| n != entry.n) {
                bail!("--q/--n conflict with entry '{}' (q = {}, n = {})", entry.name, entry.q, entry.n);
            }
            return Ok(entry.spec()?);
        }
        let q = self.q.ok_or_else(|| anyhow!("--q is required with --gens"))?;
        let field = field_make(q)?;
        if self.gens.is_empty() {
            bail!("no generators: pass --gens or --gens-file");
        }
        let mut mats = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            let m = parse_matrix(field, g)?;
            if !m.is_invertible() {
                bail!("generator {i} ({g}) is singular");
            }
            mats.push(m);
        }
        let n = mats[0].n();
        if let Some(want) = self.n {
            if want != n {
                bail!("--n {want} does not match {n}x{n} generators");
            }
        }
        if let Some(bad) = mats.iter().position(|m| m.n() != n) {
            bail!("generator {bad} has a different size from generator 0");
        }
        Ok(GroupSpec::new("cli", field, n, mats)?)
    }
}

/// Reads a flag-set file: `{"q": 2, "n": 2, "flags": [[[[1,0]]], [[[0,1]]]]}`,
/// each flag a list of subspaces, each subspace a list of spanning vectors.
pub fn read_flags(path: &Path) -> Result<SubComplex> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let q = v["q"].as_u64().ok_or_else(|| anyhow!("missing integer field 'q'"))? as u32;
    let n = v["n"].as_u64().ok_or_else(|| anyhow!("missing integer field 'n'"))? as usize;
    let field = field_make(q)?;
    let flags = v["flags"].as_array().ok_or_else(|| anyhow!("missing array field 'flags'"))?;
    let mut out = Vec::new();
    for (i, flag) in flags.iter().enumerate() {
        let members: Vec<Vec<Vec<u64>>> =
            serde_json::from_value(flag.clone()).with_context(|| format!("flag {i}: expected [[[int]]]"))?;
        let mut subspaces = Vec::new();
        for vectors in members {
            let vecs: Vec<Vec<u8>> = vectors
                .into_iter()
                .map(|v| {
                    v.into_iter()
                        .map(|x| if x < q as u64 { Ok(x as u8) } else { Err(anyhow!("flag {i}: code {x} not in F_{q}")) })
                        .collect()
                })
                .collect::<Result<_>>()?;
            subspaces.push(span(field, n, &vecs).with_context(|| format!("flag {i}"))?);
        }
        subspaces.sort();
        out.push(Flag::new(subspaces).with_context(|| format!("flag {i}"))?);
    }
    Ok(SubComplex::generated_by(field, n, &out)?)
}
