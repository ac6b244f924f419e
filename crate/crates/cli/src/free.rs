//! Free group commands: word, brooks, defect, scl, cl, rot.

use scl_core::quasimorphism::{
    brooks, brooks_homogeneous_exact, defect_observed, homogenize_estimate, homogenized_brooks, lift_from_matrix,
    rotation_number, CircleLift, DefectScan,
};
use scl_core::scl::{
    cl_lower_from_qm, cl_upper, default_brooks_dictionary, scl_lower_bavard, scl_report, SclBudget, SclStatus,
};
use scl_core::words::count_disjoint_copies;
use scl_core::{Rational, ReducedWord};
use serde_json::{json, Value};

use crate::output::{ext, frac, real, word, word_certificate, OutputRecord, APPROXIMATE, BUDGET_EXHAUSTED};
use crate::{parse_list, BrooksArgs, ClArgs, CliError, Context, DefectArgs, RotArgs, SclArgs, WordArgs};

fn parse(text: &str, rank: usize) -> Result<ReducedWord, CliError> {
    Ok(ReducedWord::parse(text, rank)?)
}

pub fn word_cmd(a: &WordArgs) -> Result<Vec<OutputRecord>, CliError> {
    let w = parse(&a.word, a.rank)?;
    let r = w.cyclically_reduce();
    let mut result = json!({
        "reduced": word(&w),
        "length": w.len(),
        "inverse": word(&w.inverse()),
        "cyclic_core": word(&r.core),
        "conjugator": word(&r.conjugator),
        "cyclic_word": w.cyclic_word().to_word().to_string(),
        "abelianization": w.abelianization(),
        "in_commutator_subgroup": w.in_commutator_subgroup(),
    });
    if let Some(n) = a.power {
        let p = w.pow(n);
        result["power"] = json!({"n": n, "word": word(&p), "length": p.len()});
    }
    let inputs = json!({"word": a.word, "rank": a.rank, "power": a.power});
    Ok(vec![OutputRecord::new("word", inputs, result)])
}

pub fn brooks_cmd(a: &BrooksArgs) -> Result<Vec<OutputRecord>, CliError> {
    let w = parse(&a.pattern, a.rank)?;
    let x = parse(&a.word, a.rank)?;
    let phi = brooks(&w)?;
    let homogenized = if x.is_empty() { Rational::from_integer(0) } else { brooks_homogeneous_exact(&w, &x)? };
    let mut result = json!({
        "value": frac(phi.eval(&x)),
        "count": count_disjoint_copies(&w, &x)?,
        "count_inverse": count_disjoint_copies(&w.inverse(), &x)?,
        "defect_bound": ext(phi.defect_upper()),
        "homogenized": frac(homogenized),
        "homogenized_defect_bound": "6/1",
    });
    if let Some(n) = a.n {
        let e = homogenize_estimate(&phi, &x, n)?;
        result["estimate"] = json!({"n": n, "value": frac(e.value), "error_bound": frac(e.error_bound)});
    }
    let inputs = json!({"pattern": a.pattern, "word": a.word, "rank": a.rank, "n": a.n});
    Ok(vec![OutputRecord::new("brooks", inputs, result)])
}

pub fn defect_cmd(a: &DefectArgs, ctx: &Context) -> Result<Vec<OutputRecord>, CliError> {
    let w = parse(&a.pattern, a.rank)?;
    let phi = if a.homogenized { homogenized_brooks(&w)? } else { brooks(&w)? };
    let d = defect_observed(&phi, a.max_len, a.samples, ctx.seed)?;
    let (scan, sampled) = match d.scan {
        DefectScan::Exhaustive { pairs } => (json!({"kind": "exhaustive", "pairs": pairs}), false),
        DefectScan::Random { pairs, seed } => (json!({"kind": "random", "pairs": pairs, "seed": seed}), true),
    };
    let result = json!({
        "observed": frac(d.value),
        "certified": ext(phi.defect_upper()),
        "witness": [word(&d.witness.0), word(&d.witness.1)],
        "scan": scan,
    });
    let inputs = json!({
        "pattern": a.pattern, "rank": a.rank, "max_len": a.max_len, "samples": a.samples,
        "homogenized": a.homogenized, "seed": ctx.seed,
    });
    let mut r = OutputRecord::new("defect", inputs, result);
    if sampled {
        r = r.flag("sampled");
    }
    Ok(vec![r])
}

pub fn scl_cmd(a: &SclArgs, ctx: &Context) -> Result<Vec<OutputRecord>, CliError> {
    let x = parse(&a.word, a.rank)?;
    let d = SclBudget::default();
    let c = &ctx.config;
    let budget = SclBudget {
        n_max: a.n_max.or(c.n_max).unwrap_or(d.n_max),
        max_len: a.max_len.or(c.max_len).unwrap_or(d.max_len),
        max_genus: a.max_genus.or(c.max_genus).unwrap_or(d.max_genus),
    };
    let r = scl_report(&x, &budget)?;
    let attempts: Vec<Value> = r
        .attempts
        .iter()
        .map(|t| json!({"n": t.n, "genus": t.genus, "bound": t.bound.map(frac), "running_min": ext(t.running_min)}))
        .collect();
    let result = json!({
        "status": r.status.as_str(),
        "lower": ext(r.lower),
        "upper": ext(r.upper),
        "lower_witness": r.lower_witness.as_ref().map(|w| json!({
            "brooks_word": word(&w.brooks_word),
            "value": frac(w.value),
            "defect": w.defect,
        })),
        "upper_witness": r.upper_witness.as_ref().map(|w| json!({"n": w.n, "genus": w.certificate.genus()})),
        "attempts": attempts,
        "above_homological_margulis": r.above_homological_margulis,
    });
    let inputs = json!({
        "word": a.word, "rank": a.rank, "n_max": budget.n_max, "max_len": budget.max_len, "max_genus": budget.max_genus,
    });
    let mut rec = OutputRecord::new("scl", inputs, result);
    if let Some(w) = &r.upper_witness {
        rec = rec.with_certificates(json!({"upper": word_certificate(&w.certificate)}));
    }
    if r.status == SclStatus::Inconclusive {
        rec = rec.flag(BUDGET_EXHAUSTED);
    }
    Ok(vec![rec])
}

pub fn cl_cmd(a: &ClArgs, ctx: &Context) -> Result<Vec<OutputRecord>, CliError> {
    let x = parse(&a.word, a.rank)?;
    let max_genus = a.max_genus.or(ctx.config.max_genus).unwrap_or(2);
    let max_len = a.max_len.or(ctx.config.max_len).unwrap_or(6);
    let inputs = json!({"word": a.word, "rank": a.rank, "max_genus": max_genus, "max_len": max_len});
    if !x.in_commutator_subgroup() {
        let result = json!({"lower": "inf", "upper": "inf", "abelianization": x.abelianization()});
        return Ok(vec![OutputRecord::new("cl", inputs, result)]);
    }
    let (lower, lower_word) = if x.is_empty() {
        (0, None)
    } else {
        let (_, w) = scl_lower_bavard(&x, &default_brooks_dictionary(&x))?;
        (cl_lower_from_qm(&x, &homogenized_brooks(&w.brooks_word)?)?, Some(word(&w.brooks_word)))
    };
    let found = cl_upper(&x, max_genus, max_len)?;
    let result = json!({
        "lower": lower,
        "lower_brooks_word": lower_word,
        "upper": found.as_ref().map(|f| f.genus),
    });
    let mut rec = OutputRecord::new("cl", inputs, result);
    match found {
        Some(f) => rec = rec.with_certificates(json!({"upper": word_certificate(&f.certificate)})),
        None => rec = rec.flag(BUDGET_EXHAUSTED),
    }
    Ok(vec![rec])
}

pub fn rot_cmd(a: &RotArgs) -> Result<Vec<OutputRecord>, CliError> {
    let (f, inputs) = match (&a.matrix, a.rotation) {
        (Some(m), _) => {
            let e: Vec<f64> = parse_list("matrix", m, Some(4))?;
            let f = lift_from_matrix([[e[0], e[1]], [e[2], e[3]]], a.branch)?;
            (f, json!({"matrix": e, "branch": a.branch, "n": a.n}))
        }
        (None, Some(t)) => (CircleLift::rotation(t), json!({"rotation": t, "n": a.n})),
        (None, None) => return Err(CliError::invalid("one of --matrix or --rotation is required")),
    };
    let r = rotation_number(&f, a.n)?;
    let result = json!({"value": real(r.value), "error_bound": real(r.error_bound), "defect_bound": 1});
    Ok(vec![OutputRecord::new("rot", inputs, result).flag(APPROXIMATE)])
}
