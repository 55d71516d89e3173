//! Sequential against rayon-parallel execution of the data-parallel loops.
//!
//! Build with `--no-default-features` to see the fallback: both arms then run
//! sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use flagfix::algebra::field_make;
use flagfix::building::{full_building, Ambient, SubComplex};
use flagfix::grouplat::{enumerate_gl_with, DEFAULT_AMBIENT_CAP};
use flagfix::harness::{generate_catalog, run_campaign, CampaignConfig, GenerateMode};
use flagfix::par::Exec;
use flagfix::theorems::check_convex;
use flagfix::topology::reduced_homology_with;

const ARMS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn enumerate(c: &mut Criterion) {
    let f3 = field_make(3).unwrap();
    let mut g = c.benchmark_group("enumerate_gl3_f3");
    g.sample_size(10);
    for (name, exec) in ARMS {
        g.bench_function(name, |b| b.iter(|| enumerate_gl_with(f3, 3, DEFAULT_AMBIENT_CAP, exec).unwrap()));
    }
    g.finish();
}

fn ambient(c: &mut Criterion) {
    let f2 = field_make(2).unwrap();
    let gl4 = enumerate_gl_with(f2, 4, DEFAULT_AMBIENT_CAP, Exec::Parallel).unwrap();
    let mut g = c.benchmark_group("ambient_gl4_f2");
    g.sample_size(10);
    for (name, exec) in ARMS {
        g.bench_function(name, |b| b.iter(|| Ambient::new_with(gl4.clone(), exec).unwrap()));
    }
    g.finish();
}

fn convex(c: &mut Criterion) {
    let f2 = field_make(2).unwrap();
    let gl3 = enumerate_gl_with(f2, 3, DEFAULT_AMBIENT_CAP, Exec::Parallel).unwrap();
    // half the vertices of X(GL_3(F_2)): not full, so every pair is examined
    let u = flagfix::algebra::Universe::get(f2, 3).unwrap();
    let gens: Vec<_> = (1..u.len() - 1)
        .step_by(2)
        .map(|s| flagfix::building::Flag::vertex(u.subspace(s).clone()).unwrap())
        .collect();
    let y = SubComplex::generated_by(f2, 3, &gens).unwrap();
    let mut g = c.benchmark_group("check_convex_gl3_f2");
    for (name, exec) in ARMS {
        let amb = Ambient::new_with(gl3.clone(), exec).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(name), &y, |b, y| b.iter(|| check_convex(y, &amb)));
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let y = full_building(field_make(2).unwrap(), 4).unwrap();
    let mut g = c.benchmark_group("homology_full_gl4_f2");
    g.sample_size(10);
    for (name, exec) in ARMS {
        g.bench_function(name, |b| b.iter(|| reduced_homology_with(&y, exec).unwrap()));
    }
    g.finish();
}

fn campaign(c: &mut Criterion) {
    let cat = generate_catalog(field_make(2).unwrap(), 3, &GenerateMode::AllCyclic, 0, DEFAULT_AMBIENT_CAP).unwrap();
    let mut g = c.benchmark_group("campaign_gl3_f2_all_cyclic");
    g.sample_size(10);
    for (name, exec) in ARMS {
        let config = CampaignConfig { exec, ..CampaignConfig::default() };
        g.bench_function(name, |b| b.iter(|| run_campaign(&cat.entries, &cat.pairs, &config)));
    }
    g.finish();
}

criterion_group!(benches, enumerate, ambient, convex, homology, campaign);
criterion_main!(benches);
