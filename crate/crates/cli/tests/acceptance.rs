//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::panic;
use std::process::Command;
use std::time::{Duration, Instant};

use qcover::bounds::{basic_lower, bound_table, gaussian, schonheim_lower, BigCount, Source};
use qcover::constructions::{
    expand_to_steiner_system, optimal_line_covering, recursive_covering, spread, trivial_steiner,
    turan_dual_covering, turan_point_design,
};
use qcover::design::{
    parse_design, verify_covering, verify_steiner, verify_steiner_system, verify_turan,
};
use qcover::{FqSpace, Subspace, SubspaceDesign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn n(x: &BigCount) -> u64 {
    u64::try_from(x.clone()).expect("fits in u64")
}

fn run_qcover(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qcover"))
        .args(args)
        .env("QCOVER_THREADS", "1")
        .output()
        .map_err(|e| format!("running qcover: {e}"))?;
    Ok((
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    ))
}

fn result_field<'a>(stdout: &'a str, key: &str) -> Option<&'a str> {
    let line = stdout.lines().find(|l| l.starts_with("RESULT: "))?;
    line.split_whitespace()
        .find_map(|w| w.strip_prefix(key)?.strip_prefix('='))
}

/// Members of the span of a binary block, by closing under addition.
fn binary_closure(rows: &[u64]) -> BTreeSet<u64> {
    let mut set = BTreeSet::from([0u64]);
    for &r in rows {
        let more: Vec<u64> = set.iter().map(|&v| v ^ r).collect();
        set.extend(more);
    }
    set
}

fn bits_of(s: &Subspace) -> Vec<u64> {
    s.rows()
        .map(|v| {
            v.coords()
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | (c as u64) << i)
        })
        .collect()
}

fn criterion_1() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("cyclic.design");
    let path_s = path.to_str().unwrap();
    let (code, out) = run_qcover(&["construct", "lemma6", "-o", path_s])?;
    ensure!(code == 0, "construct exited with {code}");
    ensure!(
        result_field(&out, "size") == Some("399"),
        "construct reported {out}"
    );

    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let d = parse_design(&text).map_err(|e| e.to_string())?;
    ensure!(d.len() == 399, "file has {} blocks", d.len());
    for b in d.blocks() {
        let rows = bits_of(b);
        let members = binary_closure(&rows);
        ensure!(members.len() == 8, "block {b} does not span 8 vectors");
        for &x in &members {
            for &y in &members {
                ensure!(members.contains(&(x ^ y)), "block {b} is not closed");
            }
        }
    }

    let (code, out) = run_qcover(&["verify", path_s, "covering", "--r", "2"])?;
    ensure!(code == 0, "verify exited with {code}");
    ensure!(
        out.contains("targets: 2667"),
        "unexpected target count:\n{out}"
    );
    let min: u64 = out
        .lines()
        .find_map(|l| l.strip_prefix("min multiplicity: "))
        .and_then(|l| l.split_whitespace().next())
        .and_then(|m| m.parse().ok())
        .ok_or("no min multiplicity in report")?;
    ensure!(min >= 1, "min multiplicity {min}");
    ensure!(
        result_field(&out, "verdict") == Some("pass"),
        "verdict not pass"
    );
    Ok(format!(
        "399 closed blocks, 2667 two-subspaces covered, min multiplicity {min}"
    ))
}

fn criterion_2() -> Check {
    let s1 = spread(2, 2, 4).map_err(|e| e.to_string())?;
    let s2 = turan_dual_covering(2, 4, 2).map_err(|e| e.to_string())?;
    ensure!(
        s1.len() == 5 && s2.len() == 7,
        "inputs have {} and {} blocks",
        s1.len(),
        s2.len()
    );
    ensure!(
        verify_covering(&s2, 2).unwrap().is_covering,
        "7-block input does not cover"
    );
    let d = recursive_covering(&s1, &s2, 2).map_err(|e| e.to_string())?;
    ensure!(d.len() == 27, "recursion gave {} blocks", d.len());
    ensure!(
        verify_covering(&d, 2).unwrap().is_covering,
        "output does not cover"
    );
    let t = bound_table(2, 5).map_err(|e| e.to_string())?;
    let rec = t.get(5, 3, 2).ok_or("no (5,3,2) entry")?;
    ensure!(
        n(&rec.lower) == 27 && n(&rec.upper) == 27,
        "table says [{}, {}]",
        rec.lower,
        rec.upper
    );
    ensure!(
        matches!(rec.lower_src, Source::Exact(_)),
        "lower from {}",
        rec.lower_src
    );
    ensure!(
        rec.upper_src == Source::Recursive,
        "upper from {}",
        rec.upper_src
    );
    ensure!(rec.is_exact(), "entry not marked exact");
    Ok("27-block C_2[5,3,2] verified; table entry exact at 27".into())
}

fn criterion_3() -> Check {
    let mut checked = 0;
    for q in [2u32, 3] {
        let qq = q as u64;
        for nn in 1..=7usize {
            for k in 1..=nn {
                let d = optimal_line_covering(q, nn, k).map_err(|e| e.to_string())?;
                let want = (qq.pow(nn as u32) - 1).div_ceil(qq.pow(k as u32) - 1);
                ensure!(
                    d.len() as u64 == want,
                    "line covering q={q} n={nn} k={k}: {}",
                    d.len()
                );
                ensure!(
                    verify_covering(&d, 1).unwrap().is_covering,
                    "q={q} n={nn} k={k} uncovered"
                );

                // the dual of T_q[n, k, 1] is C_q[n, n-1, r] with r = n - k
                let r = nn - k;
                let dual = turan_point_design(q, nn, k)
                    .map_err(|e| e.to_string())?
                    .dualize();
                let want = (qq.pow(r as u32 + 1) - 1) / (qq - 1);
                ensure!(
                    dual.len() as u64 == want,
                    "dual q={q} n={nn} r={r}: {}",
                    dual.len()
                );
                ensure!(
                    verify_covering(&dual, r).unwrap().is_covering,
                    "dual q={q} n={nn} r={r} uncovered"
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} parameter sets, sizes exact"))
}

/// Smallest number of `sets` that together meet every target. Sets and
/// targets are bitmasks over one ground set.
fn min_hitting(sets: &[u64], targets: &[u64], max: usize) -> Option<usize> {
    fn search(sets: &[u64], targets: &[u64], size: usize, start: usize, union: u64) -> bool {
        if size == 0 {
            return targets.iter().all(|&t| union & t != 0);
        }
        (start..sets.len()).any(|i| search(sets, targets, size - 1, i + 1, union | sets[i]))
    }
    (1..=max).find(|&s| search(sets, targets, s, 0, 0))
}

fn criterion_4() -> Check {
    // nonzero vectors of F_2^4 are 1..16; the line through a, b is {a, b, a^b}
    let mut lines: Vec<u16> = Vec::new();
    for a in 1u16..16 {
        for b in a + 1..16 {
            let m = 1 << a | 1 << b | 1 << (a ^ b);
            if !lines.contains(&m) {
                lines.push(m);
            }
        }
    }
    ensure!(lines.len() == 35, "{} lines", lines.len());

    // T_2(4,2,1): point sets meeting every line. Ground set: the 15 points.
    let points: Vec<u64> = (1..16).map(|p| 1 << p).collect();
    let line_masks: Vec<u64> = lines.iter().map(|&m| m as u64).collect();
    let t = min_hitting(&points, &line_masks, 8).ok_or("no blocking set up to size 8")?;
    ensure!(t == 7, "T_2(4,2,1) = {t}");

    // C_2(4,3,2): hyperplanes containing every line. Ground set: the 35 lines,
    // a hyperplane u^perp "hits" each line it contains.
    let contains = |u: u16, line: u16| {
        (1u16..16)
            .filter(|v| line >> v & 1 == 1)
            .all(|v| (u & v).count_ones().is_multiple_of(2))
    };
    let hyperplanes: Vec<u64> = (1u16..16)
        .map(|u| {
            lines
                .iter()
                .enumerate()
                .filter(|&(_, &l)| contains(u, l))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    ensure!(
        hyperplanes.iter().all(|h| h.count_ones() == 7),
        "hyperplane line counts"
    );
    let targets: Vec<u64> = (0..35).map(|i| 1u64 << i).collect();
    let c = min_hitting(&hyperplanes, &targets, 8).ok_or("no covering up to size 8")?;
    ensure!(c == 7, "C_2(4,3,2) = {c}");
    Ok("T_2(4,2,1) = 7 and C_2(4,3,2) = 7 by exhaustive search".into())
}

fn random_design(rng: &mut ChaCha8Rng, space: &FqSpace, k: usize) -> SubspaceDesign {
    let count = rng.gen_range(1..=30);
    let mut blocks = Vec::new();
    while blocks.len() < count {
        let vs: Vec<_> = (0..k)
            .map(|_| {
                let c: Vec<u32> = (0..space.n()).map(|_| rng.gen_range(0..2)).collect();
                space.vector(&c).unwrap()
            })
            .collect();
        let s = space.span(&vs).unwrap();
        if s.dim() == k {
            blocks.push(s);
        }
    }
    SubspaceDesign::new_dedup(space.clone(), k, blocks).unwrap()
}

fn criterion_5() -> Check {
    let space = FqSpace::with_order(2, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut comparisons = 0;
    for i in 0..100 {
        let k = if i % 2 == 0 { 2 } else { 3 };
        let d = random_design(&mut rng, &space, k);
        let dual = d.dualize();
        for r in 0..=k {
            let cov = verify_covering(&d, r).unwrap();
            let tur = verify_turan(&dual, 5 - r).unwrap();
            ensure!(
                cov.is_covering == tur.is_turan() && cov.histogram == tur.histogram,
                "design {i} (k={k}, {} blocks) disagrees at r={r}",
                d.len()
            );
            comparisons += 1;
        }
    }
    Ok(format!(
        "100 designs, {comparisons} comparisons, 0 disagreements"
    ))
}

fn criterion_6() -> Check {
    let t = bound_table(2, 10).map_err(|e| e.to_string())?;
    let mut entries = 0;
    for rec in t.records() {
        let (nn, k, r) = (rec.n, rec.k, rec.r);
        ensure!(
            schonheim_lower(nn, k, r, 2) >= basic_lower(nn, k, r, 2),
            "Schönheim below ratio bound at ({nn},{k},{r})"
        );
        ensure!(
            rec.lower <= rec.upper,
            "({nn},{k},{r}): {} > {}",
            rec.lower,
            rec.upper
        );
        entries += 1;
    }
    for nn in 6..=10u64 {
        let rec = t.get(nn, nn - 2, 2).ok_or("missing entry")?;
        ensure!(
            n(&rec.lower) >= 21 && n(&rec.upper) <= 27,
            "({nn},{},2): [{}, {}]",
            nn - 2,
            rec.lower,
            rec.upper
        );
    }
    let rec = t.get(7, 3, 2).ok_or("missing (7,3,2)")?;
    ensure!(
        n(&rec.lower) == 381 && n(&rec.upper) == 399,
        "(7,3,2): [{}, {}]",
        rec.lower,
        rec.upper
    );
    Ok(format!(
        "{entries} entries consistent; 381 <= C_2(7,3,2) <= 399"
    ))
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_7() -> Check {
    let mut summary = Vec::new();
    for (nn, want) in [(3usize, 14usize), (4, 140)] {
        let s = trivial_steiner(2, nn, 2).map_err(|e| e.to_string())?;
        ensure!(
            verify_steiner(&s, 2).unwrap().is_steiner,
            "input S_2[2,2,{nn}] fails"
        );
        let sys = expand_to_steiner_system(&s).map_err(|e| e.to_string())?;
        let points = 1u64 << nn;
        ensure!(
            sys.points() as u64 == points && sys.block_size() == 4,
            "wrong shape"
        );
        // 2^(n-k) translates of every block
        let formula = (1usize << (nn - 2)) * s.len();
        ensure!(
            sys.len() == want && formula == want && binom(points, 3) / binom(4, 3) == want as u64,
            "S(3,4,{points}) has {} blocks",
            sys.len()
        );
        ensure!(
            verify_steiner_system(&sys, 3).unwrap().is_steiner,
            "library check fails"
        );
        // every 3-subset in exactly one block, counted directly
        let mut seen: HashSet<[usize; 3]> = HashSet::new();
        for b in sys.blocks() {
            let b: Vec<usize> = b.iter().map(|&x| x as usize).collect();
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    for l in j + 1..b.len() {
                        let mut t = [b[i], b[j], b[l]];
                        t.sort();
                        ensure!(seen.insert(t), "triple {t:?} covered twice");
                    }
                }
            }
        }
        ensure!(
            seen.len() as u64 == binom(points, 3),
            "only {} triples covered",
            seen.len()
        );
        summary.push(format!("S(3,4,{points}) with {want} blocks"));
    }
    Ok(summary.join(", "))
}

/// Number of k-dimensional subspaces of F_q^n, q prime, by breadth-first
/// closure over explicit vector sets.
fn bfs_counts(q: u64, nn: u32) -> BTreeMap<usize, u64> {
    let size = q.pow(nn);
    let digits = |mut v: u64| -> Vec<u64> {
        (0..nn)
            .map(|_| {
                let d = v % q;
                v /= q;
                d
            })
            .collect()
    };
    let encode = |d: &[u64]| d.iter().rev().fold(0u64, |acc, &x| acc * q + x);
    let add = |a: u64, b: u64| {
        let s: Vec<u64> = digits(a)
            .iter()
            .zip(digits(b))
            .map(|(x, y)| (x + y) % q)
            .collect();
        encode(&s)
    };
    let scale = |c: u64, a: u64| {
        let s: Vec<u64> = digits(a).iter().map(|x| x * c % q).collect();
        encode(&s)
    };
    let close = |set: &BTreeSet<u64>, v: u64| -> BTreeSet<u64> {
        let mut out = set.clone();
        for &x in set {
            for c in 1..q {
                out.insert(add(x, scale(c, v)));
            }
        }
        out
    };
    let mut seen: HashSet<BTreeSet<u64>> = HashSet::new();
    let mut layer = vec![BTreeSet::from([0u64])];
    seen.insert(layer[0].clone());
    let mut counts = BTreeMap::from([(0usize, 1u64)]);
    let mut dim = 0;
    while !layer.is_empty() {
        dim += 1;
        let mut next = Vec::new();
        for s in &layer {
            for v in 0..size {
                if s.contains(&v) {
                    continue;
                }
                let t = close(s, v);
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        if !next.is_empty() {
            counts.insert(dim, next.len() as u64);
        }
        layer = next;
    }
    counts
}

fn criterion_8() -> Check {
    let mut cases = 0;
    for q in [2u64, 3] {
        for nn in 0..=5u32 {
            let counts = bfs_counts(q, nn);
            for k in 0..=nn as u64 {
                let brute = counts.get(&(k as usize)).copied().unwrap_or(0);
                ensure!(
                    n(&gaussian(nn as u64, k, q)) == brute,
                    "[{nn} {k}]_{q}: formula {} vs {brute} subspaces",
                    gaussian(nn as u64, k, q)
                );
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} Gaussian coefficients match enumeration"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "cyclic GF(64) C_2[7,3,2] with 399 blocks",
            criterion_1,
            Duration::from_secs(30),
        ),
        (
            "recursive 27-block C_2[5,3,2]",
            criterion_2,
            Duration::from_secs(5),
        ),
        (
            "exact line and hyperplane covering sizes",
            criterion_3,
            Duration::from_secs(120),
        ),
        (
            "exhaustive optimality at F_2^4",
            criterion_4,
            Duration::from_secs(120),
        ),
        (
            "covering/Turán duality on random designs",
            criterion_5,
            Duration::from_secs(60),
        ),
        (
            "bound table consistency for q=2, n<=10",
            criterion_6,
            Duration::from_secs(10),
        ),
        (
            "expansion to S(3,4,8) and S(3,4,16)",
            criterion_7,
            Duration::from_secs(30),
        ),
        (
            "Gaussian coefficients vs enumeration",
            criterion_8,
            Duration::from_secs(60),
        ),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let res = match res {
            Ok(_) if took > *limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match res {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
