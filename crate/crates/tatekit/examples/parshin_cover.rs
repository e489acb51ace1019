//! The open sets of the natural topology multiply out to the whole field:
//! V * V = K for any profile that thins out to the left but is eventually
//! full.
//!
//! ```bash
//! cargo run --example parshin_cover
//! ```

use tatekit::geometry::{parshin_cover, OpenProfile};
use tatekit::plot;
use tatekit::series::Exponents;

fn main() {
    // U_i = everything for i >= 0; for i < 0 only t1-exponents >= i.
    let v = OpenProfile::thinning();
    println!("open V = sum_i U_i t2^i, thinning to the left, full for i >= 0:");
    print!("{}", plot::ascii_plot(&v, -6, 6));

    // Every monomial in a box factors into two members of V: one factor
    // sits in the full range of outer exponents, the other compensates.
    let cover = parshin_cover(&v, (-3, -3), (3, 3));
    println!("{} factorizations in the 7x7 box; a few of them:", cover.len());
    for f in cover.iter().take(8) {
        println!(
            "  t1^{} t2^{} = (t1^{} t2^{}) * (t1^{} t2^{})",
            f.monomial.0,
            f.monomial.1,
            f.factor_in_full.0,
            f.factor_in_full.1,
            f.factor_compensating.0,
            f.factor_compensating.1
        );
    }
    for f in &cover {
        assert!(v.contains(&Exponents(vec![f.factor_in_full.0, f.factor_in_full.1])));
        assert!(v.contains(&Exponents(vec![
            f.factor_compensating.0,
            f.factor_compensating.1
        ])));
    }
    println!("every factor verified against the profile");

    // The deep example: a monomial far outside V still factors through it.
    let hard = parshin_cover(&v, (-9, -4), (-9, -4));
    let f = &hard[0];
    println!(
        "t1^-9 t2^-4 = (t1^{} t2^{}) * (t1^{} t2^{})",
        f.factor_in_full.0, f.factor_in_full.1, f.factor_compensating.0, f.factor_compensating.1
    );
}
