//! Escape-time renders: the attracting exponential map with a dynamic-ray
//! overlay, and the linearizer of z² − 1 around its repelling fixed point.
//! Writes `out/exp_attracting.pgm` and `out/linearizer.pgm`.

use num_complex::Complex64;
use tracts::models::{normalize, BlogModel, EntireModel, ExpModel, TractId};
use tracts::rays::{trace_ray, ExternalAddress};
use tracts::render::{render_julia, render_ray_overlay, write_pgm, RenderSpec};

fn main() -> tracts::Result<()> {
    std::fs::create_dir_all("out")?;

    // λ = 0.2 ∈ (0, 1/e): disjoint type; the basin renders black and the
    // hair along the positive real axis carries the traced ray.
    let lambda = Complex64::new(0.2, 0.0);
    let spec = RenderSpec {
        window: [-10.0, 60.0, -35.0, 35.0],
        width: 800,
        height: 800,
        escape_radius: 200.0,
        maxiter: 60,
    };
    let model = EntireModel::exp(lambda)?;
    let mut image = render_julia(&spec, &model)?;

    // Overlay the all-zeros ray. One pullback contracts a huge potential
    // range into a short arc, so the visible curve is the union of traces
    // at successive depths with log-spaced potentials.
    let log_model = normalize(&BlogModel::Exp(ExpModel::new(lambda, 1.0)?), 2000, 1)?;
    let address = ExternalAddress::constant(TractId::translate(0));
    let mut potentials = vec![0.0];
    for i in 0..=200 {
        potentials.push(10f64.powf(-2.0 + 20.0 * i as f64 / 200.0));
    }
    let mut marked = 0;
    for depth in 2..=16 {
        let ray = trace_ray(&log_model, &address, depth, 40.0, &potentials)?;
        marked += render_ray_overlay(&mut image, &ray.points, &spec);
    }
    println!("overlaid {marked} ray pixels");
    std::fs::write("out/exp_attracting.pgm", write_pgm(&image))?;

    // Linearizer of w² − 1 at its repelling fixed point (finite order,
    // spiralling tracts).
    let psi = EntireModel::poincare(Complex64::new(-1.0, 0.0))?;
    let spec = RenderSpec {
        window: [-4.0, 4.0, -4.0, 4.0],
        width: 800,
        height: 800,
        escape_radius: 100.0,
        maxiter: 60,
    };
    let image = render_julia(&spec, &psi)?;
    std::fs::write("out/linearizer.pgm", write_pgm(&image))?;

    println!("wrote out/exp_attracting.pgm and out/linearizer.pgm");
    Ok(())
}
