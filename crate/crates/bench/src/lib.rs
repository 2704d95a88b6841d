//! Shared fixtures for the kernel benchmarks: prebuilt family instances
//! over the default prime field.

use catlab_core::families::{build_catalecticant, build_sub_hankel};
use catlab_core::{FamilySpec, GfP, PolyMatrix, PolyRing, Polynomial};

pub fn hankel_3x2() -> PolyMatrix<GfP> {
    build_catalecticant(GfP::default(), 3, 1).expect("valid instance")
}

pub fn sub_hankel_4_5() -> PolyMatrix<GfP> {
    build_sub_hankel(GfP::default(), 4, 5).expect("valid instance")
}

pub fn sub_hankel_5_7() -> PolyMatrix<GfP> {
    build_sub_hankel(GfP::default(), 5, 7).expect("valid instance")
}

/// The square semi-Hankel instance whose minors define the Cremona map.
pub fn semi_hankel_4_4() -> (PolyRing<GfP>, Vec<Polynomial<GfP>>) {
    let fam = FamilySpec::semi_hankel(4, 4, 1)
        .build(GfP::default())
        .expect("valid instance");
    let forms = fam.matrix.signed_maximal_minors();
    (fam.ring, forms)
}
