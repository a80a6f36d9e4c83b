//! Compose normalized models: chained tracts, chained inverse branches, and
//! ray tracing through a composite address.

use num_complex::Complex64;
use tracts::models::{compose, min_shift, normalize, BlogModel, CosineModel, ExpModel, TractId};
use tracts::rays::{trace_ray, ExternalAddress};

fn main() -> tracts::Result<()> {
    let exp = normalize(
        &BlogModel::Exp(ExpModel::new(Complex64::new(1.0, 0.0), 3.0)?),
        2000,
        1,
    )?;
    let cosh = normalize(
        &BlogModel::Cosine(CosineModel::new(
            Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 0.0),
            4.0,
        )?),
        2000,
        2,
    )?;

    let stages = vec![exp.clone(), cosh.clone()];
    let shift = min_shift(&stages)?;
    println!("required composition shift a = {shift:.4}");
    let g = compose(stages, shift)?;

    let chain = TractId::Chain(vec![TractId::translate(0), TractId::translate(0)]);
    let w = Complex64::new(2.0, 0.05);
    if g.contains(&chain, w, 0.0) {
        let forward = g.eval(&chain, w)?;
        println!("G({w}) = {forward:.6}");
        let back = g.inverse(&chain, forward)?;
        println!(
            "inverse branch round-trip error = {:.3e}",
            (back - w).norm()
        );
    }

    // Rays exist for the composite as well: constant chain address.
    let address = ExternalAddress::constant(chain);
    let ray = trace_ray(&g, &address, 10, 50.0, &[0.0, 1.0, 2.0])?;
    for (t, z) in &ray.points {
        println!("composite ray: t = {t}  z = {z:.6}");
    }
    Ok(())
}
