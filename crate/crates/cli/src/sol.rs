//! `sol` subcommands.

use scl_core::sol::{
    homology_order, membership_commutator_subgroup, paper_log_decomposition, power_certificate, sol_scl_report,
    AnosovMatrix, SolElement, SolError, SolGroup, Vec2,
};
use serde_json::{json, Value};

use crate::output::{ext, sol_certificate, sol_element, OutputRecord, BUDGET_EXHAUSTED};
use crate::{parse_list, CliError, SolCommand};

fn matrix(s: &str) -> Result<AnosovMatrix, CliError> {
    let e: Vec<i64> = parse_list("matrix", s, Some(4))?;
    Ok(AnosovMatrix::from_row_major([e[0], e[1], e[2], e[3]])?)
}

fn vector(s: &str) -> Result<Vec2, CliError> {
    let v: Vec<i64> = parse_list("vector", s, Some(2))?;
    Ok([v[0], v[1]])
}

fn element(name: &str, s: &str) -> Result<SolElement, CliError> {
    let v: Vec<i64> = parse_list(name, s, Some(3))?;
    Ok(SolElement::new([v[0], v[1]], v[2]))
}

fn element_json(e: &SolElement) -> Value {
    json!({"v": e.v, "t": e.t, "text": sol_element(e)})
}

pub fn run(c: &SolCommand) -> Result<Vec<OutputRecord>, CliError> {
    match c {
        SolCommand::Mul(a) => {
            let m = matrix(&a.matrix)?;
            let g = SolGroup::new(m);
            let (x, y) = (element("a", &a.a)?, element("b", &a.b)?);
            let result = json!({
                "product": element_json(&g.try_mul(&x, &y)?),
                "inverse_a": element_json(&g.try_inv(&x)?),
                "inverse_b": element_json(&g.try_inv(&y)?),
            });
            let inputs = json!({"matrix": m.entries(), "a": [x.v[0], x.v[1], x.t], "b": [y.v[0], y.v[1], y.t]});
            Ok(vec![OutputRecord::new("sol mul", inputs, result)])
        }
        SolCommand::Member(a) => {
            let (m, v) = (matrix(&a.matrix)?, vector(&a.vector)?);
            let u = membership_commutator_subgroup(v, &m);
            let result = json!({
                "member": u.is_some(),
                "preimage": u,
                "homology_order": homology_order(v, &m),
                "index": m.index().unsigned_abs(),
            });
            Ok(vec![OutputRecord::new("sol member", json!({"matrix": m.entries(), "vector": v}), result)])
        }
        SolCommand::Cert(a) => {
            let (m, v) = (matrix(&a.matrix)?, vector(&a.vector)?);
            let cert = match power_certificate(v, &m, a.power) {
                Err(SolError::NotMember(x, y)) => {
                    return Err(CliError::invalid(format!(
                        "precondition violated: ({x}, {y}) is not in the commutator subgroup (not in (A - I) Z^2)"
                    )))
                }
                r => r?,
            };
            let verified = cert.verify(&SolGroup::new(m));
            let result = json!({"genus": cert.genus(), "verified": verified, "expression": sol_certificate(&cert, verified)["expression"]});
            let inputs = json!({"matrix": m.entries(), "vector": v, "power": a.power});
            Ok(vec![OutputRecord::new("sol cert", inputs, result).with_certificates(sol_certificate(&cert, verified))])
        }
        SolCommand::Decompose(a) => {
            let (m, v) = (matrix(&a.matrix)?, vector(&a.vector)?);
            let inputs = json!({"matrix": m.entries(), "vector": v, "max_depth": a.max_depth});
            let steps_json = |steps: &[scl_core::sol::DecompositionStep]| -> Vec<Value> {
                steps
                    .iter()
                    .map(|s| {
                        json!({
                            "depth": s.depth,
                            "residual": s.residual,
                            "pieces": s.pieces.iter().map(|p| json!({"k": p.k, "base": p.base, "vector": p.vector})).collect::<Vec<_>>(),
                            "next": s.next,
                        })
                    })
                    .collect()
            };
            match paper_log_decomposition(v, &m, a.max_depth) {
                Ok(d) => {
                    let verified = d.expression.verify(&SolGroup::new(m));
                    let result = json!({
                        "u": d.u,
                        "factor_count": d.factor_count(),
                        "depth": d.steps.len(),
                        "verified": verified,
                        "base_bound": d.params.base_bound,
                        "contraction": crate::output::real(d.params.contraction),
                        "steps": steps_json(&d.steps),
                    });
                    let cert = sol_certificate(&d.expression, verified);
                    Ok(vec![OutputRecord::new("sol decompose", inputs, result).with_certificates(cert)])
                }
                Err(SolError::DepthExceeded { max_depth, partial }) => {
                    let result = json!({"max_depth": max_depth, "steps": steps_json(&partial)});
                    Ok(vec![OutputRecord::new("sol decompose", inputs, result).flag(BUDGET_EXHAUSTED)])
                }
                Err(SolError::NotMember(x, y)) => Err(CliError::invalid(format!(
                    "precondition violated: ({x}, {y}) is not in the commutator subgroup (not in (A - I) Z^2)"
                ))),
                Err(e) => Err(e.into()),
            }
        }
        SolCommand::Scl(a) => {
            let (m, v) = (matrix(&a.matrix)?, vector(&a.vector)?);
            let r = sol_scl_report(v, &m)?;
            let verified = r.certificate.verify(&SolGroup::new(m));
            let result = json!({
                "member": r.member,
                "homology_order": r.homology_order,
                "scl": ext(r.scl),
                "cl_power_bound": if r.certificate.genus() == 0 { 0 } else { 1 },
            });
            let inputs = json!({"matrix": m.entries(), "vector": v});
            Ok(vec![OutputRecord::new("sol scl", inputs, result).with_certificates(sol_certificate(&r.certificate, verified))])
        }
    }
}
