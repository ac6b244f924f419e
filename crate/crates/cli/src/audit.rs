//! Built-in consistency checks, shared by `scl-lab audit` and the acceptance suite.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use scl_core::hyperbolic::{
    default_audit_grid, nz_core_length, surgery_proof_audit, CuspShape, SurgeryAudit, SurgeryCoeffs,
};
use scl_core::quasimorphism::brooks;
use scl_core::words::{all_reduced_words, greedy_count};
use scl_core::{Letter, Rational, ReducedWord};
use serde_json::json;

use crate::output::{frac, real, OutputRecord};
use crate::{parse_list, AuditArgs, CliError, Context};

pub const FAILED: &str = "failed";

/// Result of comparing the greedy count with a subset brute force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub patterns: usize,
    pub texts: u64,
    pub pairs: u64,
    pub mismatches: u64,
    /// `(pattern, text, greedy, brute force)` for the first mismatch found.
    pub first_mismatch: Option<(String, String, usize, usize)>,
}

/// Largest number of pairwise disjoint occurrences, trying every subset of
/// the occurrence set.
pub fn brute_force_disjoint(pattern: &[Letter], text: &[Letter]) -> usize {
    let n = pattern.len();
    if n == 0 || n > text.len() {
        return 0;
    }
    let mut occ = [0usize; 64];
    let mut k = 0;
    for i in 0..=text.len() - n {
        if text[i..i + n] == *pattern {
            occ[k] = i;
            k += 1;
        }
    }
    assert!(k < 24, "subset enumeration limited to short texts");
    let mut best = 0;
    for mask in 0u32..(1 << k) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut last: Option<usize> = None;
        let mut ok = true;
        for (b, &start) in occ[..k].iter().enumerate() {
            if mask >> b & 1 == 1 {
                if let Some(l) = last {
                    if start < l + n {
                        ok = false;
                        break;
                    }
                }
                last = Some(start);
            }
        }
        if ok {
            best = size;
        }
    }
    best
}

/// Visits every reduced word of rank `rank` and length at most `max_len`.
fn for_each_reduced(rank: usize, max_len: usize, buf: &mut Vec<Letter>, f: &mut dyn FnMut(&[Letter])) {
    f(buf);
    if buf.len() == max_len {
        return;
    }
    for code in 0..2 * rank as u16 {
        let x = Letter::from_code(code);
        if buf.last() == Some(&x.inverse()) {
            continue;
        }
        buf.push(x);
        for_each_reduced(rank, max_len, buf, f);
        buf.pop();
    }
}

fn show(letters: &[Letter], rank: usize) -> String {
    ReducedWord::from_letters(rank, letters.iter().copied()).map(|w| w.to_string()).unwrap_or_default()
}

/// Exhaustive comparison over all reduced patterns of length `1..=max_pattern_len`
/// and all reduced texts of length at most `max_text_len`, rank 2.
pub fn counting_oracle(max_pattern_len: usize, max_text_len: usize) -> OracleReport {
    let rank = 2;
    let patterns: Vec<ReducedWord> = all_reduced_words(rank, max_pattern_len).into_iter().filter(|w| !w.is_empty()).collect();
    let per_pattern: Vec<(u64, u64, Option<(String, String, usize, usize)>)> = patterns
        .par_iter()
        .map(|w| {
            let (mut texts, mut bad, mut first) = (0u64, 0u64, None);
            let mut buf = Vec::with_capacity(max_text_len);
            for_each_reduced(rank, max_text_len, &mut buf, &mut |text| {
                texts += 1;
                let g = greedy_count(w.letters(), text);
                let b = brute_force_disjoint(w.letters(), text);
                if g != b {
                    bad += 1;
                    if first.is_none() {
                        first = Some((w.to_string(), show(text, rank), g, b));
                    }
                }
            });
            (texts, bad, first)
        })
        .collect();
    let texts = per_pattern.first().map_or(0, |p| p.0);
    OracleReport {
        patterns: patterns.len(),
        texts,
        pairs: per_pattern.iter().map(|p| p.0).sum(),
        mismatches: per_pattern.iter().map(|p| p.1).sum(),
        first_mismatch: per_pattern.into_iter().find_map(|p| p.2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrooksDefectReport {
    pub pattern: String,
    pub pairs: u64,
    pub max_defect: Rational,
    pub witness: (String, String),
    pub violations: u64,
}

/// `|phi_w(a) + phi_w(b) - phi_w(ab)|` over all reduced pairs with
/// `|a|, |b| <= max_len` in rank 2, counting pairs above 3.
pub fn brooks_defect_scan(pattern: &str, max_len: usize) -> Result<BrooksDefectReport, CliError> {
    let w = ReducedWord::parse(pattern, 2)?;
    let phi = brooks(&w)?;
    let words = all_reduced_words(2, max_len);
    let values: Vec<Rational> = words.iter().map(|a| phi.eval(a)).collect();
    let three = Rational::from_integer(3);
    let rows: Vec<(Rational, usize, usize, u64)> = (0..words.len())
        .into_par_iter()
        .map(|i| {
            let mut best = (Rational::from_integer(-1), i, 0, 0u64);
            for (j, b) in words.iter().enumerate() {
                let ab = words[i].concat(b).expect("same rank");
                let d = scl_core::rational::abs(values[i] + values[j] - phi.eval(&ab));
                if d > three {
                    best.3 += 1;
                }
                if d > best.0 {
                    best = (d, i, j, best.3);
                }
            }
            best
        })
        .collect();
    let (max_defect, i, j, _) = rows.iter().fold((Rational::from_integer(-1), 0, 0, 0), |acc, r| if r.0 > acc.0 { *r } else { acc });
    Ok(BrooksDefectReport {
        pattern: w.to_string(),
        pairs: (words.len() * words.len()) as u64,
        max_defect,
        witness: (words[i].to_string(), words[j].to_string()),
        violations: rows.iter().map(|r| r.3).sum(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NzSample {
    pub meridian: Complex64,
    pub shear: f64,
    /// `|p^2 L - 2 pi / |m|^2| / (2 pi / |m|^2)`.
    pub relative_error: f64,
}

/// `count` seeded random area-one cusps with `|m|` in `[0.5, 2]` and shear in
/// `[-0.5, 0.5]`, compared with the `q`-fixed limit at slope `(p, q)`.
pub fn nz_limit_check(seed: u64, count: usize, p: i64, q: i64) -> Result<Vec<NzSample>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = SurgeryCoeffs::new(p, q)?;
    (0..count)
        .map(|_| {
            let r = rng.random_range(0.5..=2.0);
            let theta = rng.random_range(0.0..2.0 * PI);
            let shear = rng.random_range(-0.5..=0.5);
            let m = Complex64::from_polar(r, theta);
            let cusp = CuspShape::with_meridian(m, shear)?;
            let l = nz_core_length(&cusp, &s)?.value;
            let limit = 2.0 * PI / m.norm_sqr();
            Ok(NzSample { meridian: m, shear, relative_error: ((p * p) as f64 * l - limit).abs() / limit })
        })
        .collect()
}

fn surgery_record(audit: &SurgeryAudit) -> OutputRecord {
    let checks: Vec<_> = audit
        .checks
        .iter()
        .map(|c| json!({"inequality": c.name, "min_margin": real(c.min_margin), "at_radius": real(c.at_radius), "violations": c.violations}))
        .collect();
    let r = OutputRecord::new("audit", json!({"check": "surgery-inequalities", "grid_points": audit.grid_points}), json!({"passed": audit.passed(), "checks": checks}));
    if audit.passed() {
        r
    } else {
        r.flag(FAILED)
    }
}

pub fn run(a: &AuditArgs, ctx: &Context) -> Result<Vec<OutputRecord>, CliError> {
    let grid = match &a.grid {
        Some(s) => parse_list::<f64>("grid", s, None)?,
        None => default_audit_grid(a.grid_points.or(ctx.config.audit_grid_points).unwrap_or(1000)),
    };
    if let Some(t) = grid.iter().find(|&&t| !(t > 2.0)) {
        return Err(CliError::invalid(format!("precondition violated: audit radii must satisfy T > 2, got {t}")));
    }
    let mut records = vec![surgery_record(&surgery_proof_audit(&grid)?)];

    let (p, q) = (1000, 1);
    let samples = nz_limit_check(ctx.seed, a.cusps, p, q)?;
    let worst = samples.iter().map(|s| s.relative_error).fold(0.0, f64::max);
    let nz = OutputRecord::new(
        "audit",
        json!({"check": "nz-limit", "cusps": a.cusps, "p": p, "q": q, "seed": ctx.seed, "tolerance": 0.01}),
        json!({"passed": worst < 0.01, "max_relative_error": real(worst)}),
    );
    records.push(if worst < 0.01 { nz } else { nz.flag(FAILED) });

    for pattern in ["ab", "abAB"] {
        let d = brooks_defect_scan(pattern, a.brooks_len)?;
        let ok = d.violations == 0;
        let r = OutputRecord::new(
            "audit",
            json!({"check": "brooks-defect", "pattern": pattern, "max_len": a.brooks_len}),
            json!({"passed": ok, "pairs": d.pairs, "max_defect": frac(d.max_defect), "witness": [d.witness.0, d.witness.1], "violations": d.violations}),
        );
        records.push(if ok { r } else { r.flag(FAILED) });
    }

    let o = counting_oracle(4, a.oracle_len);
    let ok = o.mismatches == 0;
    let r = OutputRecord::new(
        "audit",
        json!({"check": "counting-oracle", "max_pattern_len": 4, "max_text_len": a.oracle_len}),
        json!({"passed": ok, "patterns": o.patterns, "texts": o.texts, "pairs": o.pairs, "mismatches": o.mismatches, "first_mismatch": o.first_mismatch}),
    );
    records.push(if ok { r } else { r.flag(FAILED) });
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_handles_overlaps() {
        let w = |s: &str| ReducedWord::parse(s, 2).unwrap();
        assert_eq!(brute_force_disjoint(w("abab").letters(), w("ababab").letters()), 1);
        assert_eq!(brute_force_disjoint(w("ab").letters(), w("ababab").letters()), 3);
        assert_eq!(brute_force_disjoint(w("ab").letters(), w("").letters()), 0);
    }

    #[test]
    fn small_oracle_run() {
        let r = counting_oracle(3, 6);
        assert_eq!(r.patterns, 4 + 12 + 36);
        assert_eq!(r.texts, 1 + 4 + 12 + 36 + 108 + 324 + 972);
        assert_eq!(r.mismatches, 0);
    }
}
