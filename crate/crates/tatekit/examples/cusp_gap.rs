//! The cusp s^2 = t^3 and its lattice gap: the standard lattice u k[[u]]
//! is a perfectly good Yekutieli (and Tate) lattice of the normalized
//! local field, yet no Beilinson lattice of the flag produces it.
//!
//! ```bash
//! cargo run --example cusp_gap
//! ```

use tatekit::geometry::{semigroup_gaps, tate_lattice_not_standard, CuspModel, CuspVerdict};
use tatekit::lattice::MonomialLattice;

fn main() {
    let cusp = CuspModel::default();
    println!("cusp curve s^2 = t^3, normalization t -> u^2, s -> u^3");
    println!("value semigroup <2,3> with gap set {:?}", cusp.gaps());

    // Realizability of the standard u-lattices u^v k[[u]].
    for v in 0..=5 {
        let verdict = cusp.realizability_of_valuation(v);
        match &verdict {
            CuspVerdict::Realizable { generator } => {
                println!("  u^{} k[[u]]: realizable via {}", v, generator)
            }
            CuspVerdict::Unrealizable { gap_witness } => println!(
                "  u^{} k[[u]]: UNREALIZABLE, valuation {} is a semigroup gap",
                v, gap_witness
            ),
        }
    }

    // Through the lattice interface, with the standard-form precondition.
    let target = MonomialLattice::standard(1, 1);
    println!(
        "lattice query for u^1 k[[u]]: {:?}",
        cusp.is_beilinson_realizable(&target).unwrap()
    );

    // Gap computations for other numerical semigroups.
    println!("gaps(3,5) = {:?}", semigroup_gaps(&[3, 5]).unwrap());
    println!("gaps(1) = {:?}", semigroup_gaps(&[1]).unwrap());

    // Strictness of the three lattice notions, exhibited by witnesses:
    // (a) u k[[u]] is Yekutieli but not Beilinson-realizable (above);
    // (b) a monomial Tate lattice that is not standard.
    let witness = tate_lattice_not_standard();
    let (m, big) = witness.sandwich_standard();
    println!(
        "Tate lattice strictly between standard({}) and standard({}): {}",
        big, m, witness
    );
    assert!(m < big);
}
