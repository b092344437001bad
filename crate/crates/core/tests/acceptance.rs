//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use linedyn::config;
use linedyn::constructor::{
    basic_seq_build, basic_seq_verify, combination_check, dense_target, density, density_sets, fhc_prefix_certificate,
    hc_prefix_certificate, subspace_prefix_certificates, Certificate, Targets,
};
use linedyn::criteria::{
    cor_bes, frequent_schedule_criterion, no_subspace_witness_verify, universal_span_criterion, ws_gap_criterion,
    NoSubspaceWitness, TargetFamily, TargetTail, WsGapParams,
};
use linedyn::presets::{backward_shift, polynomial_of_shift, stride_shift, weighted_backward_shift, Weights};
use linedyn::report::{self, CertificateDoc};
use linedyn::scalar::{abs, int, ratio};
use linedyn::seminorm::Generator;
use linedyn::support::iterate_support;
use linedyn::{ColumnFiniteOperator, FiniteSeq, GradedSeminormFamily, IndexDomain, OperatorSequence, Scalar, Status};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(took <= limit, "{what} took {took:?}, limit {limit:?}");
    Ok(())
}

fn uni() -> IndexDomain {
    IndexDomain::Unilateral
}

fn two_b() -> ColumnFiniteOperator {
    weighted_backward_shift(uni(), &Weights::constant(int(2))).unwrap()
}

/// Row `i` of `T^k` by pushing the row vector `e_i` through `k` products `v -> v T`.
fn power_row(t: &ColumnFiniteOperator, k: u64, i: i64) -> BTreeMap<i64, Scalar> {
    let mut v = BTreeMap::from([(i, int(1))]);
    for _ in 0..k {
        let mut w: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (j, a) in &v {
            for (c, b) in t.row(*j).unwrap().iter() {
                *w.entry(c).or_insert_with(Scalar::zero) += a * b;
            }
        }
        w.retain(|_, x| !x.is_zero());
        v = w;
    }
    v
}

fn oracle_support(t: &ColumnFiniteOperator, k: u64, i: i64) -> i64 {
    power_row(t, k, i).keys().next_back().map_or(0, |m| m + 1)
}

fn support_oracle() -> Outcome {
    let start = Instant::now();
    let ops = [
        ("B", backward_shift()),
        ("2B", two_b()),
        ("P(B)", polynomial_of_shift(&[0, 2, 1]).unwrap()),
        ("c_i = 2 + 2i", stride_shift(uni(), 2, 1).unwrap()),
    ];
    let mut compared = 0;
    for (name, t) in &ops {
        for k in 1..=5u64 {
            let power = ok(t.iterate(k as u32))?;
            for i in 0..=20 {
                let rec = ok(iterate_support(t, k, i))?;
                let direct = ok(power.support_index(i))?;
                let oracle = oracle_support(t, k, i);
                ensure!(rec == direct && direct == oracle, "{name}, k = {k}, i = {i}: {rec} / {direct} / {oracle}");
                compared += 1;
            }
        }
    }
    within(start, Duration::from_secs(5), "support comparison")?;
    Ok(format!("{compared} (T, k, i) triples agree"))
}

fn closed_form() -> Outcome {
    let start = Instant::now();
    let mut compared = 0;
    for r in 1..=3i64 {
        for c0 in 2..=3i64 {
            let t = ok(stride_shift(uni(), r, c0 - 1))?;
            for k in 1..=5u32 {
                for i in 0..=20i64 {
                    let want: i64 = (0..k).map(|n| r.pow(n) * (c0 - 1)).sum::<i64>() + r.pow(k) * i + 1;
                    let got = ok(iterate_support(&t, k as u64, i))?;
                    ensure!(got == want, "r = {r}, c0 = {c0}, k = {k}, i = {i}: {got} != {want}");
                    compared += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(1), "closed form")?;
    Ok(format!("{compared} values match"))
}

fn constant_koethe() -> GradedSeminormFamily {
    config::parse_space(
        "kind = \"weighted-sup\"\nfirst_row = 1\ngenerator = \"repeat-last\"\n[[rows]]\ntail_start = 0\ntail = { kind = \"constant\", value = \"1\" }\n",
    )
    .unwrap()
    .family
}

fn gap_koethe() -> GradedSeminormFamily {
    GradedSeminormFamily {
        kind: linedyn::SeminormKind::WeightedSup,
        domain: uni(),
        first_row: 1,
        rows: Vec::new(),
        generator: Some(Generator::FactorialGaps { known_len: 10_000 }),
    }
}

fn criterion_suite() -> Outcome {
    let id = ColumnFiniteOperator::identity(uni());
    let checks = [
        ("cor-bes B", ok(cor_bes(&backward_shift(), 100))?.status, Status::Holds),
        ("cor-bes P(B)", ok(cor_bes(&polynomial_of_shift(&[0, 2, 1]).unwrap(), 100))?.status, Status::Holds),
        ("cor-bes identity", ok(cor_bes(&id, 100))?.status, Status::Refuted),
        (
            "fhc-schedule B",
            ok(frequent_schedule_criterion(&OperatorSequence::Iterates(backward_shift()), 3, 20))?.status,
            Status::Holds,
        ),
        (
            "fhc-schedule r = 2",
            ok(frequent_schedule_criterion(&OperatorSequence::Iterates(stride_shift(uni(), 2, 1).unwrap()), 3, 5))?
                .status,
            Status::Holds,
        ),
        (
            "ws-gap omega",
            ok(ws_gap_criterion(&GradedSeminormFamily::omega(), None, &WsGapParams::default()))?.status,
            Status::Holds,
        ),
        (
            "ws-gap constant tail",
            ok(ws_gap_criterion(&constant_koethe(), None, &WsGapParams::default()))?.status,
            Status::Refuted,
        ),
        (
            "ws-gap gap pattern",
            ok(ws_gap_criterion(&gap_koethe(), None, &WsGapParams { horizon: 10_000, ..WsGapParams::default() }))?
                .status,
            Status::VerifiedUpTo(10_000),
        ),
    ];
    for (name, got, want) in &checks {
        ensure!(got == want, "{name}: {got}, expected {want}");
    }
    Ok(format!("{} verdicts as listed", checks.len()))
}

/// `(B^n x)_i = x_{i+n}`, computed without the operator.
fn shifted_window(x: &FiniteSeq, n: u64, rows: usize) -> Vec<Scalar> {
    (0..rows as i64).map(|i| x.get(i + n as i64)).collect()
}

/// Residuals of every window check of a certificate for iterates of `B`.
fn shift_residuals(c: &Certificate) -> Result<usize, String> {
    for w in &c.checks {
        let got = shifted_window(&c.vectors[w.vector], w.time, w.rows);
        let want = match w.target {
            Some(l) => c.targets[l - 1].window(0, w.rows as i64),
            None => vec![Scalar::zero(); w.rows],
        };
        for (k, (a, b)) in got.iter().zip(&want).enumerate() {
            ensure!(a == b, "vector {} at time {}: residual {} in row {k}", w.vector, w.time, a - b);
        }
    }
    Ok(c.checks.len())
}

fn round_trip(c: Certificate) -> Result<Certificate, String> {
    let doc = CertificateDoc {
        certificate: c,
        operator: "preset = \"backward-shift\"\n".into(),
        parameters: BTreeMap::new(),
        combination: None,
    };
    let back = ok(CertificateDoc::from_text(&doc.to_text()))?;
    ensure!(back == doc, "certificate text does not round-trip");
    Ok(back.certificate)
}

fn certificates() -> Outcome {
    let ops = OperatorSequence::Iterates(backward_shift());
    let start = Instant::now();
    let hc = round_trip(ok(hc_prefix_certificate(&ops, 5, 1, 1000, &Targets::Enumerated))?)?;
    let r = ok(hc.verify(&ops))?;
    ensure!(r.passed() && r.checks == 5, "hc-prefix verify: {:?}", r.failures);
    for l in 1..=5 {
        ensure!(hc.targets[l - 1] == dense_target(l), "target {l} differs from the enumeration");
    }
    let n_hc = shift_residuals(&hc)?;
    within(start, Duration::from_secs(10), "hc-prefix")?;

    let start = Instant::now();
    let fhc = round_trip(ok(fhc_prefix_certificate(&backward_shift(), 2, 2, 500))?)?;
    let r = ok(fhc.verify(&ops))?;
    ensure!(r.passed() && !fhc.hits.is_empty(), "fhc verify: {:?}", r.failures);
    let n_fhc = shift_residuals(&fhc)?;
    // every hit time lies in its set, and consecutive walked times are separated
    let times: Vec<u64> = fhc.hits.iter().map(|h| h.time).collect();
    for h in &fhc.hits {
        ensure!(density::owner(h.time).is_some_and(|(l, _)| l as usize == h.l), "time {} outside its set", h.time);
    }
    ensure!(times.windows(2).all(|w| w[1] - w[0] >= 2), "walk times too close");
    within(start, Duration::from_secs(10), "fhc")?;
    Ok(format!("{n_hc} + {n_fhc} windows, all residuals 0"))
}

fn subspace_combination() -> Outcome {
    let ops = OperatorSequence::Iterates(backward_shift());
    let c = ok(subspace_prefix_certificates(&ops, 2, 3, 1000))?;
    ensure!(ok(c.verify(&ops))?.passed(), "certificate does not verify");
    let r = ok(combination_check(&c, &ops, 200, 2024))?;
    ensure!(r.passed(), "{} combination failures: {:?}", r.failures.len(), r.failures.first());
    // independent re-check with a separate generator and the shift formula
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut windows = 0;
    for _ in 0..200 {
        let j0 = rng.gen_range(0..3);
        let mut x = FiniteSeq::zero(uni());
        for (j, u) in c.vectors.iter().enumerate() {
            let a = if j == j0 { int(1) } else { ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9)) };
            x = x.plus(&u.scaled(&a)).unwrap();
        }
        for h in c.hits.iter().filter(|h| h.vector == j0) {
            ensure!(shifted_window(&x, h.time, h.l) == c.targets[h.l - 1].window(0, h.l as i64), "independent miss");
            windows += 1;
        }
    }
    Ok(format!("200 samples, {} windows, 0 failures; {windows} windows re-checked independently", r.windows_checked))
}

fn bilateral_space() -> GradedSeminormFamily {
    config::parse_space("kind = \"weighted-l1\"\nindex_domain = \"bilateral\"\ngenerator = \"bilateral-tail\"\n")
        .unwrap()
        .family
}

/// `sum_{k >= lo} |x_k|`
fn l1_from(x: &FiniteSeq, lo: i64) -> Scalar {
    x.iter().filter(|(k, _)| *k >= lo).fold(Scalar::zero(), |s, (_, v)| s + abs(v))
}

fn no_subspace() -> Outcome {
    let start = Instant::now();
    let t = ok(weighted_backward_shift(IndexDomain::Bilateral, &Weights::constant(int(2))))?;
    let space = bilateral_space();
    let mut witnesses = Vec::new();
    for n in 0..=6i64 {
        for m in 1..=6u32 {
            let annihilated: BTreeSet<i64> = (-n..m as i64).collect();
            witnesses.push(NoSubspaceWitness { n, annihilated, constant: int(1 << m), iterate: m });
        }
    }
    let v = ok(no_subspace_witness_verify(&t, &space, &space, 0, &witnesses, 100, 6))?;
    let verify_time = start.elapsed();
    within(start, Duration::from_secs(5), "no-subspace verifier")?;
    ensure!(v.status == Status::Holds, "verifier says {}: {:?}", v.status, v.refutation);

    // equality q(T^m x) = 2^m p_n(x) on E_n, with q = p_0 and T^m x read off directly
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    for w in &witnesses {
        let m = w.iterate as i64;
        let free: Vec<i64> = (-(w.n + 12)..m + 12).filter(|k| !w.annihilated.contains(k)).collect();
        let mut xs: Vec<FiniteSeq> = free.iter().map(|&k| FiniteSeq::unit(IndexDomain::Bilateral, k).unwrap()).collect();
        for _ in 0..100 {
            let mut entries: Vec<(i64, Scalar)> = Vec::new();
            for &k in &free {
                if rng.gen_bool(0.3) {
                    entries.push((k, ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))));
                }
            }
            xs.push(FiniteSeq::from_entries(IndexDomain::Bilateral, entries).unwrap());
        }
        for x in &xs {
            // (T^m x)_i = 2^m x_{i+m}, so q(T^m x) = 2^m sum_{k >= m} |x_k|
            let lhs = int(1 << m) * l1_from(x, m);
            let rhs = int(1 << m) * l1_from(x, -w.n);
            ensure!(lhs == rhs, "n = {}, m = {m}: {lhs} != {rhs}", w.n);
            let tm: FiniteSeq = (0..m).try_fold(x.clone(), |y, _| t.apply(&y)).unwrap();
            ensure!(l1_from(&tm, 0) == lhs, "operator image disagrees at n = {}, m = {m}", w.n);
            checked += 1;
        }
    }
    Ok(format!("{} witnesses HOLDS in {:.2?}; {checked} vectors satisfy the equality", witnesses.len(), verify_time))
}

fn density_sets_check() -> Outcome {
    const H: u64 = 100_000;
    let start = Instant::now();
    let pairs: Vec<(u64, u64)> = (1..=4).flat_map(|l| (1..=4).map(move |nu| (l, nu))).collect();
    let mut members: Vec<(u64, u64)> = Vec::new();
    for n in 1..=H {
        let owners: Vec<&(u64, u64)> = pairs.iter().filter(|(l, nu)| density::contains(*l, *nu, n)).collect();
        ensure!(owners.len() <= 1, "{n} lies in {} sets", owners.len());
        if let Some(&&(_, nu)) = owners.first() {
            ensure!(n >= nu, "{n} in a set with nu = {nu}");
            members.push((n, nu));
        }
    }
    for (a, &(n, nu)) in members.iter().enumerate() {
        for &(m, mu) in members[a + 1..].iter().take_while(|(m, _)| *m < n + 8) {
            ensure!(m - n >= nu + mu, "{n} and {m} are closer than {}", nu + mu);
        }
    }
    let mut worst = String::new();
    for &(l, nu) in &pairs {
        let r = ok(density_sets(l, nu, H))?;
        ensure!(r.passed, "A({l}, {nu}): empirical {:?} below {}", r.empirical, r.declared);
        // recount from the member list
        let mine: Vec<u64> = members.iter().filter(|(n, _)| density::owner(*n) == Some((l, nu))).map(|m| m.0).collect();
        ensure!(mine.len() as u64 == r.count, "A({l}, {nu}) count {} != {}", mine.len(), r.count);
        let mut c = 0usize;
        let mut min_ratio: Option<(u64, u64)> = None;
        for n in 1..=H {
            if mine.get(c) == Some(&n) {
                c += 1;
            }
            if n >= density::burn_in(l, nu) && min_ratio.is_none_or(|(a, b)| (c as u64) * b < a * n) {
                min_ratio = Some((c as u64, n));
            }
        }
        let (a, b) = min_ratio.ok_or("burn-in beyond the prefix")?;
        let step = density::progression_step(l, nu);
        ensure!(2 * step * a >= b, "A({l}, {nu}): {a}/{b} below 1/{}", 2 * step);
        if (l, nu) == (4, 4) {
            worst = format!("A(4, 4): {a}/{b} >= 1/{}", 2 * step);
        }
    }
    within(start, Duration::from_secs(30), "density")?;
    Ok(format!("{} members on [1, {H}], 16 sets; {worst}", members.len()))
}

/// `max |x_k|`, the seminorm of every row of the constant family.
fn sup(x: &FiniteSeq) -> Scalar {
    x.iter().map(|(_, v)| abs(v)).max().unwrap_or_else(Scalar::zero)
}

fn basic_sequences() -> Outcome {
    let space = constant_koethe();
    let b = ok(basic_seq_build(&space, 10, &[]))?;
    ensure!(b.vectors.len() == 10 && b.k == int(1), "builder gave {} vectors, K = {}", b.vectors.len(), b.k);
    for (k, u) in b.vectors.iter().enumerate() {
        ensure!(ok(space.eval(1, u))? == int(1) && sup(u) == int(1), "p_1(u_{}) != 1", k + 1);
    }
    let b = ok(b.with_perturbation(&space))?;
    ensure!(b.delta == Some(ratio(1, 2)), "delta = {:?}", b.delta);
    let r = ok(basic_seq_verify(&b, &space, 100, 8))?;
    ensure!(r.passed(), "{:?}", r.failures.first());
    ensure!(r.lower_bound_checks > 0 && r.coefficient_checks > 0, "no checks ran");

    let f = b.perturbed.as_ref().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let a: Vec<Scalar> = (0..10).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))).collect();
        let combo = |vs: &[FiniteSeq], from: usize, to: usize| {
            (from..to).fold(FiniteSeq::zero(uni()), |s, k| s.plus(&vs[k].scaled(&a[k])).unwrap())
        };
        let x = combo(&b.vectors, 0, 10);
        for (n, an) in a.iter().enumerate() {
            ensure!(abs(an) <= int(2) * sup(&x), "|a_{}| > 2 p_1(x)", n + 1);
            ensure!(sup(&combo(&b.vectors, 0, n)) <= sup(&combo(&b.vectors, 0, n + 1)), "prefix inequality fails at {n}");
            let lower = sup(&combo(f, n, 10));
            ensure!(lower * int(2) >= sup(&combo(&b.vectors, n, 10)), "lower bound fails at j = {}", n + 1);
        }
    }
    Ok(format!(
        "10 vectors, K = 1, delta = 1/2; {} + {} + {} sampled checks",
        r.prefix_checks, r.coefficient_checks, r.lower_bound_checks
    ))
}

/// Rank of vectors in dimension at most 2.
fn small_rank(vs: &[&Vec<Scalar>]) -> usize {
    let nonzero: Vec<_> = vs.iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    if nonzero.is_empty() {
        return 0;
    }
    let independent = nonzero
        .iter()
        .any(|a| nonzero.iter().any(|b| a.len() == 2 && &a[0] * &b[1] != &a[1] * &b[0]));
    if independent { 2 } else { 1 }
}

/// Some `M <= 12` makes both `span{x_N..x_M}` and `span{x_{M+1}..x_{M+12}}` the whole space.
fn span_chain_dense(f: &TargetFamily, n: usize) -> bool {
    (n..=n + 12).any(|m| {
        let left: Vec<_> = (n..=m).map(|k| f.get(k).unwrap()).collect();
        let right: Vec<_> = (m + 1..=m + 12).map(|k| f.get(k).unwrap()).collect();
        small_rank(&left) == f.dim && small_rank(&right) == f.dim
    })
}

fn universal_span() -> Outcome {
    let start = Instant::now();
    let v = |xs: &[i64]| xs.iter().map(|x| int(*x)).collect::<Vec<_>>();
    let fams = [
        ("constant", TargetFamily { dim: 1, explicit: vec![], tail: Some(TargetTail::Periodic(vec![v(&[1])])) }, Status::Holds),
        (
            "truncated",
            TargetFamily { dim: 1, explicit: vec![v(&[1])], tail: Some(TargetTail::Periodic(vec![v(&[0])])) },
            Status::Refuted,
        ),
        (
            "cyclic",
            TargetFamily {
                dim: 2,
                explicit: vec![],
                tail: Some(TargetTail::Periodic(vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])])),
            },
            Status::Holds,
        ),
    ];
    for (name, f, _) in &fams {
        ok(universal_span_criterion(f, None))?;
        ensure!(f.dim <= 2, "{name}: oracle handles d <= 2");
    }
    within(start, Duration::from_secs(1), "universal span")?;
    for (name, f, want) in &fams {
        let got = ok(universal_span_criterion(f, None))?.status;
        ensure!(got == *want, "{name}: {got}, expected {want}");
        let brute = if (0..=12).all(|n| span_chain_dense(f, n)) { Status::Holds } else { Status::Refuted };
        ensure!(brute == *want, "{name}: brute-force chain gives {brute}");
    }
    Ok("HOLDS / REFUTED / HOLDS, matching the brute-force chain over M <= 12".into())
}

/// Every sampled or searched report, rendered as text.
fn reports(seed: u64) -> Result<Vec<String>, String> {
    let ops = OperatorSequence::Iterates(backward_shift());
    let mut out = Vec::new();
    let echo = BTreeMap::from([("seed".to_string(), seed.to_string())]);
    let hc = ok(hc_prefix_certificate(&ops, 5, 1, 1000, &Targets::Enumerated))?;
    let fhc = ok(fhc_prefix_certificate(&backward_shift(), 2, 2, 500))?;
    let sub = ok(subspace_prefix_certificates(&ops, 2, 3, 1000))?;
    let comb = ok(combination_check(&sub, &ops, 200, seed))?;
    for c in [hc, fhc, sub] {
        let doc = CertificateDoc { certificate: c, operator: String::new(), parameters: echo.clone(), combination: None };
        out.push(doc.to_text());
    }
    out.push(report::envelope("combination", &echo, report::combination_value(&comb)));
    let t = ok(weighted_backward_shift(IndexDomain::Bilateral, &Weights::constant(int(2))))?;
    let ws: Vec<_> = (1..=6u32)
        .map(|m| NoSubspaceWitness { n: 3, annihilated: (-3..m as i64).collect(), constant: int(1 << m), iterate: m })
        .collect();
    let v = ok(no_subspace_witness_verify(&t, &bilateral_space(), &bilateral_space(), 0, &ws, 100, seed))?;
    out.push(report::envelope("no-subspace", &echo, report::verdict_value(&v)));
    let space = constant_koethe();
    let b = ok(ok(basic_seq_build(&space, 10, &[]))?.with_perturbation(&space))?;
    let r = ok(basic_seq_verify(&b, &space, 100, seed))?;
    out.push(report::envelope("basic-seq", &echo, report::basic_report_value(&r)));
    out.push(report::envelope("density", &echo, report::density_value(&ok(density_sets(2, 3, 20_000))?)));
    let g = ok(ws_gap_criterion(&gap_koethe(), None, &WsGapParams::default()))?;
    out.push(report::envelope("ws-gap", &echo, report::verdict_value(&g)));
    Ok(out)
}

fn determinism() -> Outcome {
    let a = reports(42)?;
    let b = reports(42)?;
    for (i, (x, y)) in a.iter().zip(&b).enumerate() {
        ensure!(x == y, "report {i} differs between runs");
    }
    let bytes: usize = a.iter().map(String::len).sum();
    Ok(format!("{} reports, {bytes} bytes, identical", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("support-index oracle", support_oracle),
        ("closed form", closed_form),
        ("criterion suite", criterion_suite),
        ("certificates", certificates),
        ("subspace combination", subspace_combination),
        ("no-subspace witness", no_subspace),
        ("density sets", density_sets_check),
        ("basic sequences", basic_sequences),
        ("universal span", universal_span),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({took:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
