//! Compare escape speeds of points sharing an external address, and watch
//! the head-start profile decide the order.

use num_complex::Complex64;
use tracts::models::{normalize, BlogModel, ExpModel, TractId};
use tracts::rays::{speed_compare, ExternalAddress, HeadStartParams};

fn main() -> tracts::Result<()> {
    let model = normalize(
        &BlogModel::Exp(ExpModel::new(Complex64::new(1.0, 0.0), 3.0)?),
        2000,
        1,
    )?;
    let address = ExternalAddress::constant(TractId::translate(0));
    let phi = HeadStartParams::new(2.0, 3.0)?;

    let pairs = [
        (2.0, 2.0),  // equal points never decide
        (2.0, 6.0),  // a 4-unit head start decides almost immediately
        (3.0, 3.01), // close points take a few iterations
        (5.0, 4.2),
    ];
    for (a, b) in pairs {
        let z = Complex64::new(a, 0.0);
        let w = Complex64::new(b, 0.0);
        let verdict = speed_compare(&model, z, w, &address, &phi, 12)?;
        println!("Re z = {a:<5} vs Re w = {b:<5} → {verdict:?}");
    }

    // Off the address, comparison is undefined and errors.
    let wrong = ExternalAddress::constant(TractId::translate(3));
    let err = speed_compare(
        &model,
        Complex64::new(5.0, 0.0),
        Complex64::new(7.0, 0.0),
        &wrong,
        &phi,
        5,
    );
    println!("off-address comparison: {err:?}");
    Ok(())
}
