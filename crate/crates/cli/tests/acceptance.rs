//! Acceptance criteria 1 to 9, one status line each.
//!
//! Runs without the libtest harness so the lines are always printed. Any
//! failed criterion, or one exceeding its time limit, makes the process exit
//! nonzero.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lantern_core::cut::{is_bounding_pair, is_parallel};
use lantern_core::homology::HomologyBasis;
use lantern_core::intersection::{algebraic_intersection, drawn_crossings, minimal_position};
use lantern_core::lantern::{
    corrupted_lantern_classes, evaluate_word, lantern_homology_classes, stl_bound_report, verify_lantern_homology,
    verify_lantern_with, verify_theorem14_homology, Assignment,
};
use lantern_core::rotation::RotationMap;
use lantern_core::surface::PolygonSurface;
use lantern_core::symplectic::{symplectic_completion, transvection, HomologyVector, IntMatrix, SymplecticMatrix};
use lantern_core::theorem1::{
    brute_force_search, construct_standard, inequality_holds, verify_witness, TheoremWitness, WitnessFile,
    NOT_BOUNDING_PAIR,
};
use lantern_core::word::{
    check_derivation, conjugate_census, lemma_rules, theorem14_word, LanternLabels, McgWord, Theorem14Symbols,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// Independent oracles.

fn oracle_vertex_classes(surface: &PolygonSurface) -> usize {
    let n = surface.n_sides();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..n {
        let j = surface.partner(i);
        // (i, 0) ~ (j, 1) and (i, 1) ~ (j, 0)
        for (a, b) in [(i, (j + 1) % n), ((i + 1) % n, j)] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

fn dense(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect()).collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b[0].len();
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
        .collect()
}

fn form(g: usize) -> Vec<Vec<i64>> {
    let mut j = vec![vec![0; 2 * g]; 2 * g];
    for k in 0..g {
        j[2 * k][2 * k + 1] = 1;
        j[2 * k + 1][2 * k] = -1;
    }
    j
}

/// `MᵀJM = J`, in i128 so large completion entries cannot overflow.
fn oracle_is_symplectic(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let j = form(n / 2);
    (0..n).all(|a| {
        (0..n).all(|b| {
            let mut sum: i128 = 0;
            for k in 0..n / 2 {
                let (p, q) = (2 * k, 2 * k + 1);
                sum += m[p][a] as i128 * m[q][b] as i128 - m[q][a] as i128 * m[p][b] as i128;
            }
            sum == j[a][b] as i128
        })
    })
}

fn oracle_pairing(x: &[i64], y: &[i64]) -> i64 {
    (0..x.len() / 2).map(|k| x[2 * k] * y[2 * k + 1] - x[2 * k + 1] * y[2 * k]).sum()
}

/// `x ↦ x + ⟨x, v⟩ v`, built column by column.
fn oracle_transvection(v: &[i64]) -> Vec<Vec<i64>> {
    let n = v.len();
    let mut m = vec![vec![0; n]; n];
    for k in 0..n {
        let mut e = vec![0; n];
        e[k] = 1;
        let c = oracle_pairing(&e, v);
        for i in 0..n {
            m[i][k] = e[i] + c * v[i];
        }
    }
    m
}

fn random_vector(rng: &mut ChaCha8Rng, g: usize, bound: i64) -> HomologyVector {
    loop {
        let v: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return HomologyVector(v);
        }
    }
}

fn random_symplectic(rng: &mut ChaCha8Rng, g: usize, factors: usize) -> SymplecticMatrix {
    let mut m = SymplecticMatrix::identity(g);
    for _ in 0..factors {
        let t = transvection(&random_vector(rng, g, 1));
        m = if rng.gen_bool(0.5) { m.compose(&t) } else { m.compose(&t.inverse()) };
    }
    m
}

fn cli(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mcg-lantern")).args(args).output().expect("binary runs");
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn temp_witness(name: &str, file: &WitnessFile) -> String {
    let path = std::env::temp_dir().join(format!("mcg-lantern-acceptance-{}-{name}.txt", std::process::id()));
    fs::write(&path, file.to_text()).unwrap();
    path.to_str().unwrap().to_string()
}

// Criteria.

fn criterion_1() -> Check {
    for g in 1..=10 {
        let s = PolygonSurface::standard(g).map_err(err)?;
        ensure(s.genus() == g, format!("genus {} for g = {g}", s.genus()))?;
        ensure(s.vertex_cycles().len() == 2, format!("{} vertex classes for g = {g}", s.vertex_cycles().len()))?;
        let v = oracle_vertex_classes(&s);
        let chi = v as i64 - s.n_sides() as i64 / 2 + 1;
        ensure(v == 2 && chi == 2 - 2 * g as i64, format!("oracle disagrees for g = {g}"))?;
    }
    Ok("genus g and 2 vertex classes for g = 1..10, union-find oracle agrees".into())
}

fn standard_cases() -> Result<Vec<(usize, usize)>, String> {
    let mut cases = Vec::new();
    for g in 3..=5 {
        let n = 4 * g + 2;
        for d in (3..=n).filter(|d| n % d == 0) {
            if inequality_holds(g, d).map_err(err)? {
                cases.push((g, d));
            }
        }
    }
    Ok(cases)
}

fn criterion_2() -> Check {
    let cases = standard_cases()?;
    let expected = [(3, 7), (3, 14), (4, 3), (4, 6), (4, 9), (4, 18), (5, 11), (5, 22)];
    ensure(cases == expected, format!("case list {cases:?}"))?;
    let mut ks = Vec::new();
    for &(g, d) in &cases {
        let (surface, rotation, w) = construct_standard(g, d, None).map_err(|e| format!("({g}, {d}): {e}"))?;
        let file = WitnessFile::parse(
            &WitnessFile { surface, rotation, curve: w.curve.clone(), k: w.k }.to_text(),
        )
        .map_err(err)?;
        let report = verify_witness(&file).map_err(err)?;
        ensure(report.passed() && report.items.len() == 4, format!("({g}, {d}): {report}"))?;
        ensure(report.items.iter().all(|c| c.required && c.passed), format!("({g}, {d}) has an exempt certificate"))?;
        ks.push(format!("({g},{d}):k={}", w.k));
    }
    Ok(format!("8 witnesses pass all four certificates [{}]", ks.join(" ")))
}

fn hyperelliptic_witness(g: usize) -> Result<(PolygonSurface, RotationMap, TheoremWitness), String> {
    let s = PolygonSurface::standard(g).map_err(err)?;
    let iota = RotationMap::half_turn(&s).map_err(err)?;
    let w = brute_force_search(&s, &iota, 4, 4)
        .map_err(err)?
        .ok_or_else(|| format!("no hyperelliptic witness for g = {g}"))?;
    Ok((s, iota, w))
}

fn criterion_3() -> Check {
    let mut found = Vec::new();
    for g in 3..=5 {
        let (s, iota, w) = hyperelliptic_witness(g)?;
        let report = verify_witness(&WitnessFile { surface: s, rotation: iota, curve: w.curve.clone(), k: w.k })
            .map_err(err)?;
        ensure(report.passed(), format!("g = {g}: {report}"))?;
        found.push(format!("g={g}:{}chords,k={}", w.curve.n_chords(), w.k));
    }
    Ok(format!("certified hyperelliptic witnesses [{}]", found.join(" ")))
}

fn criterion_4() -> Check {
    let (s, r, w) = construct_standard(3, 7, None).map_err(err)?;
    let image = r.power(w.k as i64).apply(&w.curve);
    let drawn = drawn_crossings(&s, &w.curve, &image).map_err(err)?;
    let mp = minimal_position(&s, &w.curve, &image).map_err(err)?;
    ensure(mp.crossings == 0, format!("i(c, phi^k c) = {} after bigon removal", mp.crossings))?;
    let basis = HomologyBasis::new(&s).map_err(err)?;
    let hom = oracle_pairing(&basis.class(&w.curve), &basis.class(&image));
    let alg = algebraic_intersection(&s, &w.curve, &image).map_err(err)?;
    ensure(hom == 0 && alg == 0, format!("algebraic {alg}, homology pairing {hom}"))?;

    let found = brute_force_search(&s, &r, 3, 3).map_err(err)?.ok_or("brute force found nothing")?;
    let again = verify_witness(&WitnessFile { surface: s.clone(), rotation: r.clone(), curve: found.curve.clone(), k: found.k })
        .map_err(err)?;
    ensure(again.passed(), format!("brute-force witness fails re-certification: {again}"))?;
    let found_image = r.power(found.k as i64).apply(&found.curve);
    ensure(
        minimal_position(&s, &found.curve, &found_image).map_err(err)?.crossings == 0,
        "brute-force witness not disjoint",
    )?;
    Ok(format!(
        "construction: {drawn} drawn crossings, {} bigons removed, i = 0; oracle witness with {} chords at k = {}",
        mp.bigons_removed,
        found.curve.n_chords(),
        found.k
    ))
}

fn criterion_5() -> Check {
    let labels = LanternLabels::default();
    let rules = lemma_rules(&labels);
    ensure(check_derivation(&rules, &labels).map_err(err)?, "derivation fails with the lemma rules")?;
    for i in 0..rules.len() {
        let mut bad = rules.clone();
        bad[i].target = [&labels.x1, &labels.x2, &labels.gamma2][i].clone();
        ensure(!check_derivation(&bad, &labels).map_err(err)?, format!("corruption of rule {} accepted", bad[i].map))?;
    }
    let symbols = Theorem14Symbols::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut triples = Vec::new();
    while triples.len() < 10 {
        let t: (i64, i64, i64) = (rng.gen_range(-20..=20), rng.gen_range(-20..=20), rng.gen_range(-20..=20));
        if t.0 != 0 && t.1 != 0 && t.2 != 0 {
            triples.push(t);
        }
    }
    for &t in &triples {
        let w = theorem14_word(t, &labels, &symbols).map_err(err)?;
        ensure(conjugate_census(&w, &symbols.phi) == Some(6), format!("census for {t:?}"))?;
    }
    Ok("derivation replays, 3 corruptions rejected, census 6 for 10 random power triples".into())
}

fn criterion_6() -> Check {
    let labels = LanternLabels::default();
    for g in 3..=5 {
        ensure(verify_lantern_homology(g).map_err(err)?, format!("lantern fails for g = {g}"))?;
        // Product of commuting transvections, computed without the library.
        let classes = lantern_homology_classes(g, &labels).map_err(err)?;
        let product = |names: &[&String]| {
            names.iter().fold(dense(&IntMatrix::identity(2 * g)), |acc, l| mat_mul(&acc, &oracle_transvection(&classes[*l])))
        };
        let left = product(&[&labels.alpha1, &labels.alpha2, &labels.x1, &labels.gamma2]);
        let right = product(&[&labels.gamma1, &labels.x3, &labels.x2]);
        ensure(left == right, format!("oracle lantern product differs for g = {g}"))?;
    }
    Ok("exact integer equality for g = 3, 4, 5; oracle product agrees".into())
}

fn criterion_7() -> Check {
    let mut lines = Vec::new();
    for (g, d) in [(3, 7), (3, 14), (4, 3), (4, 9)] {
        let (s, r, w) = construct_standard(g, d, None).map_err(err)?;
        let report = verify_theorem14_homology(&s, &r, [&w, &w, &w]).map_err(err)?;
        ensure(report.passed(), format!("({g}, {d}):\n{report}"))?;
        let a1 = HomologyVector::basis(g, 1, 0);
        ensure(dense(report.evaluated.matrix()) == oracle_transvection(&a1), format!("({g}, {d}) oracle mismatch"))?;
        let bound = stl_bound_report(&report).map_err(err)?;
        ensure(bound.bound == 6, format!("bound {}", bound.bound))?;
        lines.push(format!("({g},{d})"));
    }
    Ok(format!("six-conjugate word equals T_[alpha1] in Sp(2g, Z) for {}; bound 6", lines.join(" ")))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut largest = 0u64;
    for g in 2..=4 {
        let a = |i| HomologyVector::basis(g, i, 0);
        let b = |i| HomologyVector::basis(g, i, 1);
        let configs: [Vec<HomologyVector>; 4] = [vec![a(1)], vec![a(1), a(2)], vec![a(1), b(1)], vec![a(1), a(1).neg()]];
        for n in 0..200 {
            let config = &configs[n % configs.len()];
            let (m, p) = (random_symplectic(&mut rng, g, 6), random_symplectic(&mut rng, g, 6));
            let sources: Vec<HomologyVector> = config.iter().map(|v| m.apply(v)).collect();
            let targets: Vec<HomologyVector> = config.iter().map(|v| p.apply(v)).collect();
            let c = symplectic_completion(&sources, &targets).map_err(|e| format!("g = {g} #{n}: {e}"))?;
            let cm = dense(c.matrix());
            largest = largest.max(cm.iter().flatten().map(|x| x.unsigned_abs()).max().unwrap_or(0));
            ensure(oracle_is_symplectic(&cm), format!("g = {g} #{n}: not symplectic"))?;
            for (s, t) in sources.iter().zip(&targets) {
                let image: Vec<i64> = cm.iter().map(|row| row.iter().zip(s.iter()).map(|(x, y)| x * y).sum()).collect();
                ensure(image == t.0, format!("g = {g} #{n}: {s} does not map to {t}"))?;
            }
        }
    }
    for n in 0..200 {
        let g = 2 + n % 3;
        let u = random_vector(&mut rng, g, 3);
        let (w, x) = (random_vector(&mut rng, g, 3), random_vector(&mut rng, g, 3));
        let v = HomologyVector(
            w.iter().zip(x.iter()).map(|(wi, xi)| u.pairing(&w) * xi - u.pairing(&x) * wi).collect(),
        );
        if v.is_zero() {
            continue;
        }
        ensure(oracle_pairing(&u, &v) == 0, "pair is not orthogonal")?;
        let (tu, tv) = (transvection(&u), transvection(&v));
        ensure(tu.compose(&tv) == tv.compose(&tu), format!("T_{u} and T_{v} do not commute"))?;
    }
    let g = 3;
    let mut assignment = Assignment::new(g);
    for i in 0..4 {
        assignment.twists.insert(format!("c{i}"), random_vector(&mut rng, g, 1));
    }
    for i in 0..2 {
        assignment.symbols.insert(format!("m{i}"), random_symplectic(&mut rng, g, 2));
    }
    // Short words over small generators keep every product inside i64.
    let random_word = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..6);
        let text: Vec<String> = (0..len)
            .map(|_| {
                let inv = if rng.gen_bool(0.5) { "^-1" } else { "" };
                if rng.gen_bool(0.6) {
                    format!("T[c{}]{inv}", rng.gen_range(0..4))
                } else {
                    format!("m{}{inv}", rng.gen_range(0..2))
                }
            })
            .collect();
        if text.is_empty() { "1".to_string() } else { text.join(" ") }.parse::<McgWord>().unwrap()
    };
    for n in 0..100 {
        let (w1, w2) = (random_word(&mut rng), random_word(&mut rng));
        let whole = evaluate_word(&w1.concat(&w2), &assignment).map_err(err)?;
        let (e1, e2) = (evaluate_word(&w1, &assignment).map_err(err)?, evaluate_word(&w2, &assignment).map_err(err)?);
        ensure(
            dense(whole.matrix()) == mat_mul(&dense(e1.matrix()), &dense(e2.matrix())),
            format!("homomorphism fails on pair #{n}: {w1} | {w2}"),
        )?;
    }
    Ok(format!("600 completions (largest entry {largest}), 200 commuting pairs, 100 word pairs"))
}

fn criterion_9() -> Check {
    // Bounding pair: the hyperelliptic witness against its half-turn image,
    // certified under the order-14 rotation whose seventh power is the half turn.
    let (s, iota, w) = hyperelliptic_witness(3)?;
    let image = iota.apply(&w.curve);
    ensure(is_bounding_pair(&s, &w.curve, &image).map_err(err)?, "constructed pair not detected as bounding")?;
    let r = RotationMap::new(&s, 1).map_err(err)?;
    ensure(r.power(7) == iota, "seventh power is not the half turn")?;
    let bp = temp_witness("bounding", &WitnessFile { surface: s.clone(), rotation: r, curve: w.curve.clone(), k: 7 });
    let (code, out) = cli(&["thm1", "verify", &bp]);
    let _ = fs::remove_file(&bp);
    ensure(code == Some(1), format!("bounding pair: exit {code:?}"))?;
    ensure(out.contains(&format!("FAIL {NOT_BOUNDING_PAIR}")), "bounding pair: certificate not reported")?;

    let (s, r, w) = construct_standard(3, 7, None).map_err(err)?;
    ensure(is_parallel(&s, &w.curve, &r.power(7).apply(&w.curve)).map_err(err)?, "identity image not parallel")?;
    let par = temp_witness("parallel", &WitnessFile { surface: s, rotation: r.clone(), curve: w.curve, k: r.order() });
    let (code, out) = cli(&["thm1", "verify", &par]);
    let _ = fs::remove_file(&par);
    ensure(code == Some(1) && out.contains("FAIL not_parallel"), format!("parallel pair: exit {code:?}"))?;

    let labels = LanternLabels::default();
    let bad = corrupted_lantern_classes(3, &labels).map_err(err)?;
    ensure(!verify_lantern_with(3, &bad, &labels).map_err(err)?, "corrupted lantern accepted")?;
    let (code, _) = cli(&["verify", "lantern", "--genus", "3", "--corrupt"]);
    ensure(code == Some(1), format!("corrupted lantern: exit {code:?}"))?;
    Ok("bounding pair, parallel pair and corrupted lantern each exit 1".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 9] = [
        ("surface invariants", 1, criterion_1),
        ("standard witnesses", 10, criterion_2),
        ("hyperelliptic search", 60, criterion_3),
        ("oracle agreement", 60, criterion_4),
        ("lantern derivation", 1, criterion_5),
        ("lantern on homology", 1, criterion_6),
        ("six conjugates on homology", 5, criterion_7),
        ("symplectic properties", 30, criterion_8),
        ("negative controls", 60, criterion_9),
    ];
    // panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(limit);
        let (status, detail) = match &result {
            Ok(d) if in_time => ("pass", d.clone()),
            Ok(d) => ("FAIL", format!("over the time limit: {d}")),
            Err(e) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {} {status} [{name}] {:.2}s of {limit}s: {}",
            i + 1,
            elapsed.as_secs_f64(),
            detail.lines().next().unwrap_or("")
        );
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
