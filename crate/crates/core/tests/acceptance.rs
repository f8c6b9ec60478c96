//! Acceptance run: one pass/fail line per criterion, then a non-zero exit if
//! any criterion failed. Runs without the libtest harness so the lines are
//! always printed.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use dcal::checker::{check_proof, parse_script, render_path, CheckOptions, ProofTree};
use dcal::conservativity::{conservativity_report, is_severe, Reason, Verdict};
use dcal::cutelim::{eliminate_cuts, principal_reduce, DEFAULT_FUEL};
use dcal::display::{display_search, DEFAULT_DEPTH};
use dcal::metatheory::{lint_catalog, mutants, Condition};
use dcal::rules::{catalog, Base};
use dcal::syntax::{parse_decls, parse_sequent, Place, Side};

/// Minimum number of corpus scripts.
const MIN_SCRIPTS: usize = 26;
/// Per-script parse-and-check budget.
const PER_SCRIPT: Duration = Duration::from_millis(50);
/// Budget for checking the whole corpus.
const CORPUS_TOTAL: Duration = Duration::from_secs(2);
/// Per-pair cut-elimination budget.
const PER_PAIR: Duration = Duration::from_secs(1);
/// Random sample sizes.
const UNIFORMITY_SAMPLES: usize = 1000;
const INVOLUTION_SAMPLES: usize = 500;
const SEVERITY_SAMPLES: usize = 500;
/// Cap on draws while collecting instances with a severe source.
const SEVERITY_MAX_DRAWS: usize = 200_000;

const GOLDEN: [&str; 19] = [
    "atom", "top", "bot", "agid", "fncid", "tri0", "tri1", "tri2", "tri3", "btri0", "btri1", "btri2", "btri3",
    "rarr0", "rarr1", "rarr2", "brarr0", "brarr1", "brarr2",
];

/// Every two-way pair of the corpus, by file stem without the `_lr`/`_rl`.
const PAIRS: [&str; 13] = [
    "dia_atom", "box_atom", "box_bot", "dia_bot", "box_top", "box_and", "dia_and", "dia_or", "box_or", "dia_imp",
    "box_imp", "swap_dia_box", "box_dia",
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn corpus_texts() -> Vec<(String, String)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(manifest().join("../../corpus"))
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "dcp"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).expect("readable"))
        })
        .collect()
}

fn corpus() -> Vec<(String, ProofTree)> {
    corpus_texts().into_iter().map(|(n, t)| (n, parse_script(&t).expect("parses").proof)).collect()
}

fn find(proofs: &[(String, ProofTree)], name: &str) -> Result<ProofTree, String> {
    proofs.iter().find(|(n, _)| n == name).map(|(_, t)| t.clone()).ok_or(format!("{name} missing"))
}

fn corpus_completeness() -> Outcome {
    let texts = corpus_texts();
    if texts.len() < MIN_SCRIPTS {
        return Err(format!("{} scripts, need {MIN_SCRIPTS}", texts.len()));
    }
    // Build the static catalogs outside the timed region.
    let _ = (catalog(Base::Intuitionistic), catalog(Base::Classical));
    let start = Instant::now();
    let mut slowest = (Duration::ZERO, String::new());
    for (name, text) in &texts {
        let t0 = Instant::now();
        let script = parse_script(text).map_err(|e| format!("{name}: {e}"))?;
        let r = check_proof(&script.proof, &CheckOptions::default());
        let dt = t0.elapsed();
        if !r.ok {
            return Err(format!("{name}: {}", r.failures[0]));
        }
        if dt > slowest.0 {
            slowest = (dt, name.clone());
        }
    }
    let total = start.elapsed();
    if slowest.0 >= PER_SCRIPT {
        return Err(format!("{} took {:?} (budget {PER_SCRIPT:?})", slowest.1, slowest.0));
    }
    if total >= CORPUS_TOTAL {
        return Err(format!("corpus took {total:?} (budget {CORPUS_TOTAL:?})"));
    }
    Ok(format!("{} scripts valid; slowest {} {:?}; total {total:?}", texts.len(), slowest.1, slowest.0))
}

fn reduction_fidelity() -> Outcome {
    let load = |name: &str| -> Result<ProofTree, String> {
        let text = std::fs::read_to_string(manifest().join("tests/golden").join(name)).map_err(|e| format!("{name}: {e}"))?;
        parse_script(&text).map(|s| s.proof).map_err(|e| format!("{name}: {e}"))
    };
    for case in GOLDEN {
        let input = load(&format!("{case}.in.dcp"))?;
        let expected = load(&format!("{case}.out.dcp"))?;
        let got = principal_reduce(&input, &[]).map_err(|e| format!("{case}: {e}"))?;
        if got != expected {
            return Err(format!("{case}: reduct differs from the golden file"));
        }
        let old = input.cut_rank().ok_or(format!("{case}: input is not a cut"))?.complexity;
        if got.nodes().iter().filter_map(|(_, n)| n.cut_rank()).any(|r| r.complexity >= old) {
            return Err(format!("{case}: a new cut is not smaller"));
        }
    }
    Ok(format!("{} golden reductions match", GOLDEN.len()))
}

fn cut_admissibility() -> Outcome {
    let proofs = corpus();
    let mut slowest = Duration::ZERO;
    let mut runs = 0;
    for stem in PAIRS {
        let a = find(&proofs, &format!("{stem}_lr"))?;
        let b = find(&proofs, &format!("{stem}_rl"))?;
        for (l, r) in [(a.clone(), b.clone()), (b, a)] {
            let t0 = Instant::now();
            let cut = ProofTree::cut(l, r);
            let free = eliminate_cuts(&cut, DEFAULT_FUEL).map_err(|e| format!("{stem}: {e}"))?;
            let dt = t0.elapsed();
            let report = check_proof(&free, &CheckOptions { base: Base::Classical, ..CheckOptions::default() });
            if !report.ok || free.conclusion != cut.conclusion {
                return Err(format!("{stem}: result does not check"));
            }
            if dt >= PER_PAIR {
                return Err(format!("{stem}: {dt:?} (budget {PER_PAIR:?})"));
            }
            slowest = slowest.max(dt);
            runs += 1;
        }
    }
    Ok(format!("{runs} compositions of {} pairs cut-free; slowest {slowest:?}", PAIRS.len()))
}

fn type_uniformity() -> Outcome {
    let mut sampler = common::Sampler::new(4);
    let strategy = common::any_instance(2);
    for _ in 0..UNIFORMITY_SAMPLES {
        let (_, inst) = sampler.sample(&strategy);
        if let Some(v) = common::uniformity_violation(&inst) {
            return Err(v);
        }
    }
    Ok(format!("{UNIFORMITY_SAMPLES} instantiations, 0 failures"))
}

fn display_properties() -> Outcome {
    let mut sampler = common::Sampler::new(5);
    let strategy = common::sequent(3);
    for _ in 0..INVOLUTION_SAMPLES {
        let s = sampler.sample(&strategy);
        if let Some(v) = common::involution_violation(&s) {
            return Err(v);
        }
    }
    // Endsequents, as required, and every non-severe sequent occurring inside
    // a corpus proof, which exercises multi-step searches.
    let mut sequents = Vec::new();
    for (name, t) in corpus() {
        sequents.push((name.clone(), t.conclusion.clone()));
        for (path, n) in t.nodes() {
            if !path.is_empty() && !is_severe(&n.conclusion) {
                sequents.push((format!("{name} node {}", render_path(&path)), n.conclusion.clone()));
            }
        }
    }
    let (mut positions, mut deepest) = (0, 0);
    for (name, s) in &sequents {
        for (pos, place) in s.positions() {
            let steps = display_search(s, &pos, DEFAULT_DEPTH).map_err(|e| format!("{name} {pos}: {e}"))?;
            let end = steps.last().map_or(s, |st| &st.result);
            let side = if place == Place::Precedent { Side::Lhs } else { Side::Rhs };
            if end.side(side) != s.at(&pos).expect("position exists") {
                return Err(format!("{name} {pos}: displayed on the wrong side"));
            }
            positions += 1;
            deepest = deepest.max(steps.len());
        }
    }
    Ok(format!(
        "{INVOLUTION_SAMPLES} random sequents involutive; {positions} positions in {} corpus sequents displayed (max {deepest} steps)",
        sequents.len()
    ))
}

fn severity_preservation() -> Outcome {
    let mut sampler = common::Sampler::new(6);
    let strategy = common::any_instance(2);
    let (mut found, mut draws) = (0, 0);
    while found < SEVERITY_SAMPLES && draws < SEVERITY_MAX_DRAWS {
        draws += 1;
        let (schema, inst) = sampler.sample(&strategy);
        if !common::has_severe_source(schema, &inst) {
            continue;
        }
        found += 1;
        if let Some(v) = common::severity_violation(schema, &inst) {
            return Err(v);
        }
    }
    if found < SEVERITY_SAMPLES {
        return Err(format!("only {found} severe instances in {draws} draws"));
    }
    Ok(format!("{found} instances with a severe source ({draws} draws), all severe after the step"))
}

fn conservativity() -> Outcome {
    let mut witnesses = 0;
    let mut outside = 0;
    for (name, t) in corpus() {
        let r = conservativity_report(&t);
        if !r.in_image {
            outside += 1;
        } else if r.verdict.is_witness() {
            witnesses += 1;
        } else {
            return Err(format!("{name}: {:?}", r.verdict));
        }
    }
    let d = parse_decls("prop p q r.").expect("decls");
    let seq = |t: &str| parse_sequent(t, &d).expect("sequent");
    let top = ProofTree::leaf("TopR", seq("I |- top"));
    let weakened = ProofTree::new("IW_L", seq("(q VBLARR0 p) STRI0 r |- top"), vec![top]);
    if !check_proof(&weakened, &CheckOptions::default()).ok {
        return Err("the weakening counterexample does not check".into());
    }
    match conservativity_report(&weakened).verdict {
        Verdict::Rejected(rs) if rs.contains(&Reason::VaIntroduced) => {}
        v => return Err(format!("virtual-adjoint weakening not rejected: {v:?}")),
    }
    Ok(format!(
        "{witnesses} in-image corpus proofs are witnesses ({outside} outside the image); VA weakening rejected"
    ))
}

fn lint() -> Outcome {
    for b in [Base::Intuitionistic, Base::Classical] {
        let v = lint_catalog(&catalog(b).rules);
        if let Some(first) = v.first() {
            return Err(format!("{b:?} catalog: {first}"));
        }
    }
    let mut names = Vec::new();
    for m in mutants() {
        let got: BTreeSet<Condition> = lint_catalog(&m.rules).iter().map(|v| v.condition).collect();
        if got != m.intended {
            return Err(format!("{}: got {got:?}, intended {:?}", m.name, m.intended));
        }
        names.push(m.name);
    }
    Ok(format!("catalogs clean; mutants {} trigger exactly their conditions", names.join(", ")))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("corpus completeness", corpus_completeness),
        ("reduction fidelity", reduction_fidelity),
        ("cut admissibility", cut_admissibility),
        ("type uniformity", type_uniformity),
        ("display involution and relativized display", display_properties),
        ("severity preservation", severity_preservation),
        ("conservativity report", conservativity),
        ("rule lint", lint),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
