//! Coefficient fields by Hensel lifting, and the adelic staircases of the
//! line and the smooth plane flag.
//!
//! ```bash
//! cargo run --example hensel_cohen
//! ```

use tatekit::basefield::FieldSpec;
use tatekit::geometry::{adele_line, adele_plane_smooth, hensel_coefficient_field};
use tatekit::series::Exponents;

fn main() {
    // The completion of F_5[x] at (x^2 - 2) is kappa[[pi]] with
    // kappa = F_25 and pi the class of x^2 - 2. The coefficient field
    // embeds kappa by the Hensel root a of x^2 - 2 with a = x mod pi.
    let model = hensel_coefficient_field(5, &[3, 0, 1], 8).unwrap();
    let a = model.embedding_series().unwrap();
    println!("embedding of the residue generator (digits over kappa):");
    println!("  a = {}", a.pretty(&["pi"]));
    println!("  newton error valuations: {:?}", model.error_valuations);
    println!("  (each step at least doubles the pi-adic error: quadratic convergence)");

    // The flag ((0) > (f)) on the affine line: a 1-local field kappa((pi)).
    let line = adele_line(5, &[3, 0, 1]).unwrap();
    println!("\n{}", line);
    let u = line.series(&[(0, 1), (1, -1)]);
    println!("invert 1 - pi in that field: {}", u.inv(&[5]).unwrap().pretty(&["pi"]));

    // The smooth plane flag ((0) > (y) > (x,y)) gives the full staircase.
    let plane = adele_plane_smooth(FieldSpec::Rationals);
    println!("\nstaircase of the smooth plane flag:");
    for (i, step) in plane.steps.iter().enumerate() {
        println!("  step {}: {}  >=  {}  ->>  {}", i + 1, step.field, step.integers, step.residue);
    }
    let e = plane.element(&[(-1, 1, 1), (0, 0, 1)]);
    println!("element x^-1 y + 1 of K: residue at the first step = {}", e.residue().unwrap());
    let v = plane.element(&[(-2, 3, 1)]);
    println!(
        "valuation of y^3 x^-2 in K = {}   (inner, outer) exponents",
        v.lex_valuation().unwrap()
    );
    assert_eq!(v.lex_valuation().unwrap(), Exponents(vec![-2, 3]));
}
