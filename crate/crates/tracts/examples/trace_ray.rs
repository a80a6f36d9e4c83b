//! Trace a dynamic ray of the normalized exponential model by iterated
//! pullback and write it as CSV (`out/ray.csv`).

use num_complex::Complex64;
use tracts::models::{normalize, BlogModel, ExpModel, TractId};
use tracts::rays::{trace_ray, ExternalAddress};

fn main() -> tracts::Result<()> {
    let model = normalize(
        &BlogModel::Exp(ExpModel::new(Complex64::new(1.0, 0.0), 3.0)?),
        2000,
        1,
    )?;

    // The all-zeros address: the ray landing on the real axis.
    let address = ExternalAddress::constant(TractId::translate(0));
    let potentials: Vec<f64> = (0..=40).map(|i| i as f64 * 0.5).collect();
    let ray = trace_ray(&model, &address, 20, 50.0, &potentials)?;
    println!(
        "traced {} ray points at depth {} (error bound {:.3e})",
        ray.points.len(),
        ray.depth,
        ray.error_bound
    );
    for (t, z) in ray.points.iter().take(5) {
        println!("  t = {t:4.1}  z = {z}");
    }

    // A period-two address through the translate tracts.
    let address = ExternalAddress::parse("1,-1")?;
    let ray2 = trace_ray(&model, &address, 18, 50.0, &[0.0, 1.0, 2.0])?;
    println!("period-two ray head: {}", ray2.points[0].1);

    std::fs::create_dir_all("out")?;
    std::fs::write("out/ray.csv", ray.to_csv())?;
    println!("wrote out/ray.csv");
    Ok(())
}
