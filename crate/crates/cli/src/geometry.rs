//! Hyperbolic estimate commands: tube, hk, surgery-a, surgery-b, nz, gap.

use num_complex::Complex64;
use scl_core::hyperbolic::{
    cusp_genus_bound, hk_min_core_length, length_gap_bound, maximal_cusp_area_lower_bound, nz_core_length,
    nz_quadratic_form, optimal_epsilon, scl_lower_from_tube, scl_upper_from_surgery, surgery_length_bound,
    surgery_sandwich_holds, tube_area, tube_qm_value, CuspShape, GapParams, GapVariant, GenusBoundVariant,
    SurfaceData, SurgeryCoeffs, TubeParams,
};
use serde_json::json;

use crate::output::{frac, real, OutputRecord, APPROXIMATE};
use crate::{
    parse_list, CliError, Context, GapArgs, GapVariantArg, GenusVariantArg, HkArgs, NzArgs, SurgeryAArgs, SurgeryBArgs,
    TubeArgs,
};

pub fn tube(a: &TubeArgs) -> Result<Vec<OutputRecord>, CliError> {
    let t = TubeParams::new(a.length, a.radius)?;
    let q = tube_qm_value(&t);
    let result = json!({
        "qm_value": real(q.value),
        "defect_upper": real(q.defect_upper),
        "scl_lower": real(scl_lower_from_tube(&t)),
        "area": real(tube_area(&t)),
    });
    Ok(vec![OutputRecord::new("tube", json!({"length": a.length, "radius": a.radius}), result)])
}

pub fn hk(a: &HkArgs) -> Result<Vec<OutputRecord>, CliError> {
    let result = json!({"min_core_length": real(hk_min_core_length(a.radius)?)});
    Ok(vec![OutputRecord::new("hk", json!({"radius": a.radius}), result)])
}

pub fn surgery_a(a: &SurgeryAArgs) -> Result<Vec<OutputRecord>, CliError> {
    let s = SurfaceData::new(a.chi, a.multiplicity)?;
    let mut result = json!({
        "length_bound": real(surgery_length_bound(&s, a.radius, a.p)?),
        "scl_upper": frac(scl_upper_from_surgery(&s, a.p)?),
        "chi_q": frac(s.chi_q()),
    });
    if let Some(len) = a.core_length {
        let tube = TubeParams::new(len, a.radius)?;
        result["scl_lower"] = real(scl_lower_from_tube(&tube));
        result["sandwich_holds"] = json!(surgery_sandwich_holds(&s, a.p, &tube)?);
    }
    let inputs = json!({
        "chi": a.chi, "multiplicity": a.multiplicity, "p": a.p, "radius": a.radius, "core_length": a.core_length,
    });
    Ok(vec![OutputRecord::new("surgery-a", inputs, result)])
}

pub fn surgery_b(a: &SurgeryBArgs) -> Result<Vec<OutputRecord>, CliError> {
    let variant = match a.variant {
        GenusVariantArg::Tube => GenusBoundVariant::Tube,
        GenusVariantArg::Boroczky => GenusBoundVariant::Boroczky,
    };
    let result = json!({
        "neg_chi_q_lower": real(cusp_genus_bound(a.meridian_length, variant)?),
        "maximal_cusp_area_lower": maximal_cusp_area_lower_bound(a.meridian_length).map(real),
    });
    let name = match a.variant {
        GenusVariantArg::Tube => "tube",
        GenusVariantArg::Boroczky => "boroczky",
    };
    let inputs = json!({"meridian_length": a.meridian_length, "variant": name});
    Ok(vec![OutputRecord::new("surgery-b", inputs, result)])
}

fn complex(name: &str, s: &str) -> Result<Complex64, CliError> {
    let v: Vec<f64> = parse_list(name, s, Some(2))?;
    Ok(Complex64::new(v[0], v[1]))
}

pub fn nz(a: &NzArgs) -> Result<Vec<OutputRecord>, CliError> {
    let m = complex("meridian", &a.meridian)?;
    let cusp = match &a.longitude {
        Some(l) => CuspShape::new(m, complex("longitude", l)?)?,
        None => CuspShape::with_meridian(m, a.shear.unwrap_or(0.0))?,
    };
    let s = SurgeryCoeffs::new(a.p, a.q)?;
    let l = cusp.longitude();
    let result = json!({
        "quadratic_form": real(nz_quadratic_form(&cusp, &s)),
        "core_length": real(nz_core_length(&cusp, &s)?.value),
        "longitude": [real(l.re), real(l.im)],
    });
    let inputs = json!({"meridian": [m.re, m.im], "longitude": a.longitude, "shear": a.shear, "p": a.p, "q": a.q});
    Ok(vec![OutputRecord::new("nz", inputs, result).flag(APPROXIMATE)])
}

pub fn gap(a: &GapArgs, ctx: &Context) -> Result<Vec<OutputRecord>, CliError> {
    let margulis_n = a.margulis_n.or(ctx.config.margulis_n);
    let margulis_2 = a.margulis_2.or(ctx.config.margulis_2);
    let cap = [a.cap, margulis_2, margulis_n.map(|m| m / 4.0)].into_iter().flatten().fold(f64::INFINITY, f64::min);
    let mut opt = optimal_epsilon(cap)?;
    // the surface cap is strict, so stay just below it
    if margulis_2.is_some_and(|m2| opt.eps >= m2) {
        opt.eps = opt.eps.next_down();
        opt.min_constant = scl_core::hyperbolic::gap_constant(opt.eps);
    }
    let epsilon = a.epsilon.unwrap_or(opt.eps);
    let variant = match a.variant {
        GapVariantArg::Uniform => GapVariant::Uniform,
        GapVariantArg::FixedManifold => GapVariant::FixedManifold,
    };
    let gp = GapParams { m: a.m, g: a.g, epsilon, margulis_n, margulis_2 };
    let bound = length_gap_bound(&gp, variant)?;
    let result = json!({
        "length_bound": real(bound),
        "epsilon": real(epsilon),
        "constant": real(scl_core::hyperbolic::gap_constant(epsilon)),
        "optimal_epsilon": real(opt.eps),
        "optimal_constant": real(opt.min_constant),
    });
    let name = match a.variant {
        GapVariantArg::Uniform => "uniform",
        GapVariantArg::FixedManifold => "fixed-manifold",
    };
    let inputs = json!({
        "m": a.m, "g": a.g, "epsilon": a.epsilon, "variant": name, "cap": a.cap,
        "margulis_n": margulis_n, "margulis_2": margulis_2,
    });
    Ok(vec![OutputRecord::new("gap", inputs, result)])
}
