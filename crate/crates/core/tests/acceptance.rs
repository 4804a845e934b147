//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line with
//! its tolerance and time budget; the process exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;
use reebseq::spectral::spectral_homology;
use reebseq::{
    betti_groups, build_e1, build_reeb_graph, compute_e2, assemble_homology, fixtures, pi1_generators, reduce_word, reeb_betti,
    verify_two_columns, AbelianGroup, Coefficients, Instance, SectionPipeline, VertexFunction,
};

const Z: Coefficients = Coefficients::Integers;

/// Runs `body` and prints the verdict line. Errors and overruns fail.
fn criterion(number: u32, title: &str, tolerance: &str, limit: Duration, body: impl FnOnce() -> Result<String, String>) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let verdict = match &outcome {
        Ok(_) if elapsed > limit => Err(format!("took {elapsed:.2?}, over the {limit:?} limit")),
        Ok(detail) => Ok(detail.clone()),
        Err(e) => Err(e.clone()),
    };
    match &verdict {
        Ok(detail) => println!("PASS criterion {number} [{title}] tolerance={tolerance} time={elapsed:.2?}/{limit:?}: {detail}"),
        Err(e) => println!("FAIL criterion {number} [{title}] tolerance={tolerance} time={elapsed:.2?}/{limit:?}: {e}"),
    }
    verdict.is_ok()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn strings(groups: &[AbelianGroup]) -> Vec<String> {
    groups.iter().map(ToString::to_string).collect()
}

fn direct(inst: &Instance, top: usize, ring: Coefficients) -> Vec<AbelianGroup> {
    betti_groups(&inst.complex, top, ring)
}

fn padded(mut g: Vec<AbelianGroup>, len: usize, ring: Coefficients) -> Vec<AbelianGroup> {
    g.resize(len.max(g.len()), AbelianGroup::zero(ring));
    g
}

fn criterion_1_abstract_torus_page() -> bool {
    criterion(1, "abstract torus page", "exact", Duration::from_secs(1), || {
        let e2 = compute_e2(&fixtures::torus_e1_page()).map_err(|e| e.to_string())?;
        for d in &e2.degrees {
            ensure(d.critical.to_string() == "Z" && d.section.to_string() == "Z", || {
                format!("degree {}: E2 = ({}, {})", d.degree, d.critical, d.section)
            })?;
        }
        ensure(e2.degrees.len() == 2, || format!("{} rows", e2.degrees.len()))?;
        let h = assemble_homology(&e2).map_err(|e| e.to_string())?;
        ensure(strings(&h.groups()) == ["Z", "Z^2", "Z"], || h.to_string())?;
        Ok(h.to_string())
    })
}

fn criterion_2_csaszar_torus_pipeline() -> bool {
    criterion(2, "Csaszar torus pipeline", "exact", Duration::from_secs(10), || {
        let inst = fixtures::csaszar_torus();
        let values = &inst.function.values;
        ensure((1..values.len()).all(|i| !values[..i].contains(&values[i])), || "heights are not injective".into())?;
        let (_, _, h) = spectral_homology(&SectionPipeline::new(&inst, Z).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let oracle = direct(&inst, 2, Z);
        ensure(strings(&h.groups()) == ["Z", "Z^2", "Z"], || h.to_string())?;
        ensure(h.groups() == oracle, || format!("direct {:?}", strings(&oracle)))?;
        Ok(h.to_string())
    })
}

fn criterion_3_sphere() -> bool {
    criterion(3, "sphere", "exact", Duration::from_secs(1), || {
        let inst = fixtures::sphere();
        let g = build_reeb_graph(&inst).map_err(|e| e.to_string())?;
        ensure(g.vertices.len() == 4 && g.edges.len() == 3, || format!("{} vertices, {} edges", g.vertices.len(), g.edges.len()))?;
        let path = g.edges.iter().enumerate().all(|(k, e)| e.source == k && e.target == k + 1);
        ensure(path, || format!("edges {:?}", g.edges))?;
        ensure(reeb_betti(&g) == (1, 0), || format!("betti {:?}", reeb_betti(&g)))?;
        let (_, _, h) = spectral_homology(&SectionPipeline::new(&inst, Z).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(strings(&h.groups()) == ["Z", "0", "Z"], || h.to_string())?;
        Ok(format!("path on 4 vertices, {h}"))
    })
}

fn criterion_4_hawaiian_truncations() -> bool {
    criterion(4, "Hawaiian truncations n=1..8", "exact", Duration::from_secs(5), || {
        let mut seen = Vec::new();
        for n in 1..=8 {
            let inst = fixtures::hawaiian(n);
            let p = SectionPipeline::new(&inst, Z).map_err(|e| e.to_string())?;
            let g = reebseq::ReebGraph::from_pipeline(&p).map_err(|e| e.to_string())?;
            let e2 = compute_e2(&build_e1(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let (b1, e2_rank) = (reeb_betti(&g).1, e2.degrees[0].section.free_rank);
            ensure(b1 == n && e2_rank == n, || format!("n={n}: reeb b1={b1}, rank E2[1,0]={e2_rank}"))?;
            seen.push(b1);
        }
        Ok(format!("b1 = {seen:?}"))
    })
}

/// A random complex of dimension exactly 2 with injective rational heights.
fn random_surface_like(seed: u64) -> Instance {
    let mut r = common::rng(seed);
    loop {
        let n = r.gen_range(3..=12);
        let complex = common::random_complex(&mut r, n);
        if complex.dim() == Some(2) {
            let values = common::injective_values(&mut r, n);
            return Instance::new(complex, VertexFunction::new(values)).expect("generated instance is valid");
        }
    }
}

fn criterion_5_oracle_equivalence() -> bool {
    const CASES: u64 = 200;
    criterion(5, "oracle equivalence on random 2-complexes", "exact, free rank and torsion", Duration::from_secs(60), || {
        for seed in 0..CASES {
            let inst = random_surface_like(0xacce_0000 + seed);
            let p = SectionPipeline::new(&inst, Z).map_err(|e| format!("seed {seed}: {e}"))?;
            let (_, _, h) = spectral_homology(&p).map_err(|e| format!("seed {seed}: {e}"))?;
            let got = padded(h.groups(), 3, Z);
            let want = direct(&inst, 2, Z);
            ensure(got[..3] == want[..], || format!("seed {seed}: spectral {:?} direct {:?}", strings(&got), strings(&want)))?;
        }
        Ok(format!("{CASES} instances agree in degrees 0..2"))
    })
}

fn criterion_6_two_columns() -> bool {
    criterion(6, "two-column verification", "zero mismatches", Duration::from_secs(30), || {
        let mut checked = Vec::new();
        for (name, inst) in fixtures::all() {
            if inst.critical_values().len() > 5 {
                continue;
            }
            for ring in [Z, Coefficients::Prime(2)] {
                let p = SectionPipeline::new(&inst, ring).map_err(|e| format!("{name}: {e}"))?;
                verify_two_columns(&p).map_err(|e| format!("{name} over {ring:?}: {e}"))?;
            }
            checked.push(name);
        }
        ensure(checked.len() >= 8, || format!("only {checked:?}"))?;
        Ok(format!("{} fixtures: {}", checked.len(), checked.join(",")))
    })
}

fn criterion_7_word_calculus() -> bool {
    const WORDS: u64 = 1000;
    criterion(7, "word calculus", "zero failures", Duration::from_secs(10), || {
        let mut r = common::rng(0x7070);
        for k in 0..WORDS {
            let g = common::random_reeb_graph(&mut r);
            let base = r.gen_range(0..g.vertices.len());
            let len = r.gen_range(0..40);
            let w = common::random_word(&mut r, &g, base, len);
            let stack = reduce_word(&g, &w).map_err(|e| e.to_string())?.word;
            let random = common::reduce_in_random_order(&mut r, &w);
            ensure(stack == random, || format!("word {k}: {stack} vs {random}"))?;
            let inv = w.concat(&w.inverse(&g).map_err(|e| e.to_string())?, &g).map_err(|e| e.to_string())?;
            let empty = reduce_word(&g, &inv).map_err(|e| e.to_string())?.word;
            ensure(empty.letters.is_empty(), || format!("word {k}: w w^-1 reduces to {empty}"))?;
        }
        for (name, inst) in fixtures::all() {
            let g = build_reeb_graph(&inst).map_err(|e| format!("{name}: {e}"))?;
            let components = g.components();
            let mut count = 0;
            for c in 0..reeb_betti(&g).0 {
                let base = components.iter().position(|&x| x == c).expect("component has a vertex");
                count += pi1_generators(&g, base).map_err(|e| format!("{name}: {e}"))?.len();
            }
            let b1 = betti_groups(&g.to_complex(), 1, Z)[1].free_rank;
            ensure(count == b1 && b1 == reeb_betti(&g).1, || format!("{name}: {count} generators, b1 {b1}"))?;
        }
        Ok(format!("{WORDS} words, generator counts match on every fixture"))
    })
}

fn criterion_8_refinement_invariance() -> bool {
    criterion(8, "refinement invariance", "exact", Duration::from_secs(10), || {
        let mut r = common::rng(0x8888);
        let mut checked = 0;
        for (name, inst) in fixtures::all() {
            let levels = inst.critical_values();
            let v = levels.values();
            let k = r.gen_range(0..=v.len());
            let one = reebseq::Rational::from_integer(1.into());
            let level = match k {
                0 => v[0].clone() - one,
                k if k == v.len() => v[k - 1].clone() + one,
                k => {
                    let t = reebseq::Rational::new(r.gen_range(1i64..16).into(), 16.into());
                    v[k - 1].clone() + (v[k].clone() - v[k - 1].clone()) * t
                }
            };
            let refined = levels.with_level(level.clone()).ok_or_else(|| format!("{name}: {level} is critical"))?;
            let coarse = spectral_homology(&SectionPipeline::new(&inst, Z).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.2;
            let fine = spectral_homology(&SectionPipeline::with_levels(&inst, refined, Z).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?
                .2;
            ensure(coarse == fine, || format!("{name}: {coarse} vs {fine} after adding {level}"))?;
            checked += 1;
        }
        Ok(format!("{checked} fixtures unchanged"))
    })
}

fn main() {
    let criteria: [fn() -> bool; 8] = [
        criterion_1_abstract_torus_page,
        criterion_2_csaszar_torus_pipeline,
        criterion_3_sphere,
        criterion_4_hawaiian_truncations,
        criterion_5_oracle_equivalence,
        criterion_6_two_columns,
        criterion_7_word_calculus,
        criterion_8_refinement_invariance,
    ];
    // Run every criterion even after a failure so each prints its line.
    let failed = criteria.iter().filter(|run| !run()).count();
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
