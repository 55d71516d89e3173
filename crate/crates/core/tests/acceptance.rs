//! Acceptance criteria, one line of output each. Exits nonzero if any fails.

use std::collections::HashSet;
use std::time::Instant;

use flagfix::algebra::{field_make, span, Field, Mat, Subspace};
use flagfix::building::{
    all_frames, apartment_from_frame, full_building, is_thick, is_thin, panel_degrees, Ambient, Flag, SubComplex,
};
use flagfix::grouplat::{closure, is_normal_in, GroupSpec, DEFAULT_AMBIENT_CAP, DEFAULT_CLOSURE_CAP};
use flagfix::harness::{
    generate_catalog, run_campaign, CampaignConfig, CampaignReport, Catalog, GenerateMode, Outcome,
};
use flagfix::theorems::{borel_tits_demo, check_fixed_point_form, loewy_centres, verify_serre_question};
use flagfix::topology::reduced_homology;

const SEED: u64 = 20240601;

fn f(q: u32) -> Field {
    field_make(q).unwrap()
}

fn population() -> Catalog {
    let mut cat = Catalog::default();
    for (q, n) in [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3)] {
        cat.extend(generate_catalog(f(q), n, &GenerateMode::AllCyclic, SEED, DEFAULT_AMBIENT_CAP).unwrap());
    }
    cat.extend(generate_catalog(f(2), 4, &GenerateMode::NamedStandard, SEED, DEFAULT_AMBIENT_CAP).unwrap());
    cat.extend(
        generate_catalog(f(2), 3, &GenerateMode::Random { k: 2, count: 200 }, SEED, DEFAULT_AMBIENT_CAP).unwrap(),
    );
    cat
}

fn config() -> CampaignConfig {
    CampaignConfig { seed: SEED, ..CampaignConfig::default() }
}

struct Line {
    pass: bool,
    text: String,
}

fn line(id: u32, pass: bool, text: String) -> Line {
    Line { pass, text: format!("criterion {id:>2}: {} | {text}", if pass { "PASS" } else { "FAIL" }) }
}

fn count(report: &CampaignReport, check: &str, pred: impl Fn(&Outcome) -> bool) -> usize {
    report.records.iter().filter(|r| r.checks.get(check).is_some_and(&pred)).count()
}

fn first_bad(report: &CampaignReport, check: &str) -> String {
    report
        .records
        .iter()
        .find(|r| !r.checks.get(check).is_some_and(Outcome::is_pass))
        .map(|r| format!("; first bad: {} {:?} {:?}", r.name, r.checks.get(check), r.error))
        .unwrap_or_default()
}

fn criterion_1(report: &CampaignReport, secs: f64) -> Line {
    let disagreements = count(report, "dichotomy", |o| matches!(o, Outcome::Disagreement(_)));
    let passed = count(report, "dichotomy", Outcome::is_pass);
    let errors = report.records.iter().filter(|r| r.error.is_some()).count();
    let nonempty = report.records.iter().filter(|r| !r.simplex_counts.is_empty()).count();
    let ok = disagreements == 0 && errors == 0 && passed == report.records.len() && secs < 600.0;
    line(
        1,
        ok,
        format!(
            "{} subgroups ({nonempty} with nonempty X^H): {disagreements} X-cr/homology disagreements, {errors} errors, campaign {secs:.1}s{}",
            report.records.len(),
            if ok { String::new() } else { first_bad(report, "dichotomy") }
        ),
    )
}

fn criterion_2(report: &CampaignReport) -> Line {
    let agree = count(report, "g_cr", Outcome::is_pass);
    let not_cr = report.records.iter().filter(|r| r.g_cr.is_some_and(|v| !v.building)).count();
    let ok = agree == report.records.len();
    line(
        2,
        ok,
        format!(
            "three G-cr tests agree on {agree}/{} ({not_cr} not G-cr){}",
            report.records.len(),
            if ok { String::new() } else { first_bad(report, "g_cr") }
        ),
    )
}

fn criterion_3(report: &CampaignReport) -> Line {
    let targets: Vec<_> = report.records.iter().filter(|r| r.g_cr.is_some_and(|v| !v.building)).collect();
    let good = targets
        .iter()
        .filter(|r| r.checks["centre"].is_pass() && r.centre.as_ref().is_some_and(|c| c.checks.all_hold()))
        .count();
    let ok = good == targets.len() && !targets.is_empty();
    line(3, ok, format!("centre found with all assertions on {good}/{} non-G-cr subgroups", targets.len()))
}

fn criterion_4() -> Line {
    let mut hs: Vec<GroupSpec> = Vec::new();
    for (q, n, count) in [(2, 2, 40), (3, 2, 120), (2, 3, 200)] {
        let mut cat = generate_catalog(f(q), n, &GenerateMode::NamedStandard, SEED, DEFAULT_AMBIENT_CAP).unwrap();
        let random = GenerateMode::Random { k: 2, count };
        cat.extend(generate_catalog(f(q), n, &random, SEED, DEFAULT_AMBIENT_CAP).unwrap());
        hs.extend(cat.entries.iter().map(|e| e.spec().unwrap()));
    }
    let (mut normal, mut non_normal, mut violations, mut errors) = (0, 0, 0, 0);
    for h in &hs {
        let hc = closure(h, DEFAULT_CLOSURE_CAP);
        let mut seen = HashSet::new();
        for g in hc.elements() {
            let n = GroupSpec::new("n", h.field(), h.n(), vec![g.clone()]).unwrap();
            let nc = closure(&n, DEFAULT_CLOSURE_CAP);
            if !seen.insert(nc.canonical_key()) {
                continue;
            }
            if !is_normal_in(&nc, &hc).unwrap() {
                non_normal += 1;
                continue;
            }
            normal += 1;
            match verify_serre_question(&n, h) {
                Ok(v) if v.consistent => {}
                Ok(_) => violations += 1,
                Err(_) => errors += 1,
            }
        }
    }
    line(
        4,
        violations == 0 && errors == 0 && normal > 0,
        format!(
            "{} overgroups, {normal} normal cyclic pairs: {violations} violations, {errors} errors ({non_normal} non-normal cyclic subgroups not applicable)",
            hs.len()
        ),
    )
}

fn criterion_5(report: &CampaignReport) -> Line {
    let pairs: Vec<_> = report.pair_records.iter().filter(|p| !matches!(p.checks["loewy"], Outcome::Skip(_))).collect();
    let good = pairs.iter().filter(|p| p.checks["loewy"].is_pass()).count();
    let entries = count(report, "loewy", |o| !matches!(o, Outcome::Skip(_)));
    let entries_good = count(report, "loewy", Outcome::is_pass);

    let f2 = f(2);
    let h = GroupSpec::new("j3", f2, 3, vec![Mat::jordan_unipotent(f2, 3)]).unwrap();
    let k = GroupSpec::new(
        "b",
        f2,
        3,
        vec![Mat::elementary(f2, 3, 0, 1, 1), Mat::elementary(f2, 3, 1, 2, 1), Mat::elementary(f2, 3, 0, 2, 1)],
    )
    .unwrap();
    let chain =
        Flag::new(vec![Subspace::coordinate(f2, 3, &[0]).unwrap(), Subspace::coordinate(f2, 3, &[0, 1]).unwrap()])
            .unwrap();
    let j3 = loewy_centres(&h, &k).unwrap();
    let exact = j3.socle_flag == chain && j3.radical_flag == chain && j3.k_stable && closure(&k, 100).order() == 8;
    let ok = good == pairs.len() && !pairs.is_empty() && entries_good == entries && exact;
    line(
        5,
        ok,
        format!(
            "designated pairs stable {good}/{}, self-normalizing entries stable {entries_good}/{entries}, J_3 in the 8-element Borel: socle = radical = {} ({})",
            pairs.len(),
            j3.socle_flag,
            if exact { "exact" } else { "mismatch" }
        ),
    )
}

fn criterion_6() -> Line {
    let mut parts = Vec::new();
    let mut ok = true;
    for (q, n, rank) in [(2, 2, 2), (3, 2, 3), (4, 2, 4), (5, 2, 5), (2, 3, 8), (3, 3, 27), (2, 4, 64)] {
        let start = Instant::now();
        let y = full_building(f(q), n).unwrap();
        let h = reduced_homology(&y).unwrap();
        let secs = start.elapsed().as_secs_f64();
        let closed_form = (q as usize).pow((n * (n - 1) / 2) as u32);
        let top = n - 2;
        let concentrated = h.reduced_betti.iter().enumerate().all(|(d, &b)| d == top || b == 0)
            && h.torsion.iter().all(Vec::is_empty);
        let good = h.reduced_betti[top] == rank && rank == closed_form && concentrated && (n < 4 || secs < 120.0);
        ok &= good;
        parts.push(format!("GL_{n}(F_{q})={}", h.reduced_betti[top]));
        if n == 4 {
            parts.push(format!("GL_4(F_2) in {secs:.3}s"));
        }
    }
    line(6, ok, parts.join(", "))
}

fn criterion_7(report: &CampaignReport) -> Line {
    let good = count(report, "fixed_point_form", Outcome::is_pass);
    let f2 = f(2);
    let ambient = Ambient::general_linear(f2, 2, DEFAULT_AMBIENT_CAP).unwrap();
    let y = SubComplex::generated_by(
        f2,
        2,
        &[
            Flag::vertex(Subspace::coordinate(f2, 2, &[0]).unwrap()).unwrap(),
            Flag::vertex(Subspace::coordinate(f2, 2, &[1]).unwrap()).unwrap(),
        ],
    )
    .unwrap();
    let v = check_fixed_point_form(&y, &ambient);
    let diag = Flag::vertex(span(f2, 2, &[vec![1, 1]]).unwrap()).unwrap();
    let non_example = !v.is_fixed_point_form && v.counterexample.as_ref() == Some(&diag);
    let ok = good == report.records.len() && non_example;
    line(
        7,
        ok,
        format!(
            "round trip on {good}/{} fixed-point complexes; two-vertex non-example rejected with counterexample {}",
            report.records.len(),
            v.counterexample.map_or("none".into(), |c| c.to_string())
        ),
    )
}

fn criterion_8() -> Line {
    let f2 = f(2);
    let ambient = Ambient::general_linear(f2, 3, DEFAULT_AMBIENT_CAP).unwrap();
    let u_gens = vec![Mat::elementary(f2, 3, 0, 1, 1), Mat::elementary(f2, 3, 1, 2, 1)];
    let u = closure(&GroupSpec::new("u", f2, 3, u_gens).unwrap(), 100);
    let mut seen = HashSet::new();
    let mut subgroups = Vec::new();
    for a in u.elements() {
        for b in u.elements() {
            let spec = GroupSpec::new("s", f2, 3, vec![a.clone(), b.clone()]).unwrap();
            let c = closure(&spec, 100);
            if c.order() > 1 && seen.insert(c.canonical_key()) {
                subgroups.push(spec);
            }
        }
    }
    let mut good = 0;
    for s in &subgroups {
        if let Ok(r) = borel_tits_demo(s, &ambient) {
            if r.normalizer_in_complex_stabilizer && r.parabolic_order < ambient.order() {
                good += 1;
            }
        }
    }
    let ok = good == subgroups.len() && subgroups.len() == 9;
    line(8, ok, format!("N_G(U) fixes a flag for {good}/{} nontrivial subgroups of the unitriangular group", subgroups.len()))
}

fn criterion_9() -> Line {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [3usize, 4] {
        let frames = all_frames(f(2), n).unwrap();
        let fact: usize = (1..=n).product();
        let good = frames
            .iter()
            .filter(|fr| {
                let a = apartment_from_frame(fr);
                is_thin(&a) && a.maximal_flags().len() == fact
            })
            .count();
        ok &= good == frames.len();
        parts.push(format!("{good}/{} apartments of F_2^{n} thin with {fact} chambers", frames.len()));
    }
    for (q, n) in [(2, 3), (3, 3), (4, 3), (5, 3), (2, 4)] {
        let b = full_building(f(q), n).unwrap();
        let deg = panel_degrees(&b);
        let regular = deg.len() == 1 && deg.contains_key(&(q as usize + 1)) && is_thick(&b);
        ok &= regular;
        parts.push(format!("X(GL_{n}(F_{q})) {}-regular: {regular}", q + 1));
    }
    line(9, ok, parts.join("; "))
}

fn criterion_10(first: &CampaignReport, population: &Catalog) -> Line {
    let second = run_campaign(&population.entries, &population.pairs, &config());
    let a = first.verdict_json();
    let b = second.verdict_json();
    line(10, a == b, format!("verdict sections {} ({} bytes)", if a == b { "byte-identical" } else { "differ" }, a.len()))
}

fn main() {
    let start = Instant::now();
    let pop = population();
    let t = Instant::now();
    let report = run_campaign(&pop.entries, &pop.pairs, &config());
    let campaign_secs = t.elapsed().as_secs_f64();

    let lines = vec![
        criterion_1(&report, campaign_secs),
        criterion_2(&report),
        criterion_3(&report),
        criterion_4(),
        criterion_5(&report),
        criterion_6(),
        criterion_7(&report),
        criterion_8(),
        criterion_9(),
        criterion_10(&report, &pop),
    ];
    for l in &lines {
        println!("{}", l.text);
    }
    let failed = lines.iter().filter(|l| !l.pass).count();
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s (campaign summary: {} checks, {} pass, {} fail, {} skip, {} disagreement)",
        lines.len() - failed,
        lines.len(),
        start.elapsed().as_secs_f64(),
        report.summary.checks,
        report.summary.pass,
        report.summary.fail,
        report.summary.skip,
        report.summary.disagreement
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
