//! The monomial lattice Grassmannian: containment, meet, join, the
//! standard-lattice sandwich, graded quotients, and the lattice predicate.
//!
//! ```bash
//! cargo run --example lattice_calculus
//! ```

use std::collections::BTreeMap;
use tatekit::lattice::{MonomialLattice, MonomialSubspace, Region, SliceVal};
use tatekit::plot;

fn main() {
    // Standard lattices t2^i O1 are totally ordered.
    let std0 = MonomialLattice::standard(2, 0);
    let std3 = MonomialLattice::standard(2, 3);
    println!("standard(0) contains standard(3): {}", std0.contains(&std3).unwrap());
    println!("meet(std 1, std 3) = {}", MonomialLattice::standard(2, 1).meet(&std3).unwrap());
    println!("join(std 1, std 3) = {}", MonomialLattice::standard(2, 1).join(&std3).unwrap());

    // A lattice with a proper exceptional slice: full from 0, and the
    // slice t1^2 k[[t1]] at outer exponent -1.
    let mut slices = BTreeMap::new();
    slices.insert(
        -1,
        SliceVal::Sub {
            sub: MonomialSubspace::standard(1, 2),
        },
    );
    let l = MonomialLattice::new(MonomialSubspace {
        arity: 2,
        below: Region::Zero,
        slices,
        tail_from: 0,
        tail: Region::Full,
    })
    .unwrap();
    let (m, big) = l.sandwich_standard();
    println!("exceptional-slice lattice sandwich: standard({}) <= L <= standard({})", big, m);
    println!("{}", plot::ascii_plot(l.subspace(), -4, 4));

    // Quotients are graded by the outer exponent with finitely many slices.
    let q = std0.quotient(&std3).unwrap();
    println!("standard(0)/standard(3) has {} graded slices:", q.len());
    for (j, s) in &q {
        println!("  outer exponent {}: {:?} / {:?}", j, s.big, s.small);
    }

    // The lattice predicate refuses the diagonal subspace from the
    // twisted-lifting counterexample: its slices never become FULL, so the
    // quotient V/L would not be discrete.
    let diagonal = MonomialSubspace {
        arity: 2,
        below: Region::Zero,
        slices: BTreeMap::new(),
        tail_from: 0,
        tail: Region::HalfLine { base: 0, slope: -1 },
    };
    println!("diagonal subspace (t1-bound falls with the t2-exponent):");
    println!("{}", plot::ascii_plot(&diagonal, -4, 4));
    match diagonal.lattice_defect() {
        Some(reason) => println!("not a lattice: {}", reason),
        None => unreachable!("the diagonal must be refused"),
    }

    // Unbounded-below subspaces fail for the dual reason.
    let unbounded = MonomialSubspace {
        arity: 2,
        below: Region::Full,
        slices: BTreeMap::new(),
        tail_from: 0,
        tail: Region::Full,
    };
    println!("members at every outer exponent: {}", unbounded.lattice_defect().unwrap());
}
