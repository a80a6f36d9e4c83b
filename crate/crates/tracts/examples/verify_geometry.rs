//! Run the tract-geometry verifiers in both directions: the exponential
//! model satisfies bounded slope, bounded wiggling and the pairwise
//! head-start condition, while tube surrogates with a fold or a vertical
//! meander are caught violating them.

use num_complex::Complex64;
use tracts::models::{normalize, BlogModel, ExpModel, TractId, TubeModel};
use tracts::rays::{
    check_bounded_slope, check_wiggling, delta_constants_growth, finite_order_constants,
    fit_growth_constants, headstart_verify_pair, HeadStartParams,
};
use tracts::tube::TubeDomain;
use tracts::wiggle::corridor_geometry;

fn main() -> tracts::Result<()> {
    let tract = TractId::translate(0);
    let exp = normalize(
        &BlogModel::Exp(ExpModel::new(Complex64::new(1.0, 0.0), 3.0)?),
        2000,
        1,
    )?;

    // Bounded slope: the exponential tract is an asymptotically horizontal
    // finger, so a small α and β ≤ 2π + 1 fit.
    let beta_cap = 2.0 * std::f64::consts::PI + 1.0;
    let slope = check_bounded_slope(&exp, &tract, 5000, 1, 10.0, beta_cap, None)?;
    println!("exp slope fit: {:?}", slope.fitted);

    // Bounded wiggling with the finite-order constants.
    let (rho, m) = fit_growth_constants(&exp, &tract, 2000, 2)?;
    let (k, mu) = finite_order_constants(rho, m)?;
    let wig = check_wiggling(&exp, &tract, k, mu, 400, 24, 3)?;
    println!(
        "exp wiggling with (K, μ) = ({k:.3}, {mu:.3}): {} violations",
        wig.violations.len()
    );

    // Head-start with K = 2 and the separation constant as M.
    let sp = slope.fitted.unwrap();
    let delta = delta_constants_growth(sp.alpha.max(0.05), sp.beta, 2.0, 0.0)?;
    let phi = HeadStartParams::new(2.0, delta)?;
    let hs = headstart_verify_pair(&exp, &tract, &tract, &phi, 10_000, 4)?;
    println!(
        "exp head-start (K = 2, M = {delta:.2}): {} admissible pairs, {} violations",
        hs.admissible,
        hs.violations.len()
    );

    // A folded tube surrogate: one wiggle at desk scale. Tight head-start
    // constants are violated across the fold, and so is tight wiggling.
    let fold = BlogModel::Tube(TubeModel::new(corridor_geometry(&[2.2, 5.0, 14.0], 0.5)?)?);
    let tight = HeadStartParams::new(1.0001, 0.01)?;
    let hs = headstart_verify_pair(&fold, &tract, &tract, &tight, 20_000, 5)?;
    println!(
        "folded tube head-start (K = 1.0001, M = 0.01): {} admissible, {} violations",
        hs.admissible,
        hs.violations.len()
    );
    let wig = check_wiggling(&fold, &tract, 1.01, 0.01, 300, 40, 6)?;
    println!(
        "folded tube wiggling (K = 1.01, μ = 0.01): {} violations",
        wig.violations.len()
    );

    // A vertical meander: imaginary parts grow without real parts following,
    // so no slope constants under the caps fit.
    let mut pts = Vec::new();
    for j in 0..40 {
        let x = if j % 2 == 0 { 1.5 } else { 4.0 };
        pts.push(Complex64::new(x, 1.5 * j as f64));
    }
    let meander = BlogModel::Tube(TubeModel::new(TubeDomain::new(pts, 0.45)?)?);
    let slope = check_bounded_slope(&meander, &tract, 5000, 7, 10.0, beta_cap, None)?;
    println!(
        "meander slope: fitted = {:?}, unbounded-slope suspicion = {}, β at α-cap = {:.1}",
        slope.fitted, slope.unbounded_slope_suspicion, slope.beta_at_alpha_cap
    );
    Ok(())
}
