//! Regularity profiles `(ln K, n)` for the set families the crate knows
//! about, and how they combine under unions.
//!
//! ```text
//! cargo run --example regularity_profiles
//! ```

use regcover::regularity::{
    pomt_components_log, profile_cp_tensor, profile_poly_image, profile_rational_image, profile_semialgebraic,
    profile_union, profile_variety, BallOrSphere, SetVariant,
};
use regcover::tensor::TensorShape;

fn main() -> regcover::Result<()> {
    println!("components of a degree-3 system in R^4: at most e^{:.3}", pomt_components_log(3, 4)?.ln());

    for variant in [SetVariant::Full, SetVariant::Ball, SetVariant::Sphere, SetVariant::SphereCone] {
        let p = profile_poly_image(2, 3, variant)?;
        println!("image of a cubic R^2 -> R^N, {variant:?}: ln K = {:.4}, n = {}", p.log_k(), p.n);
    }

    let v = profile_variety(5, 2, 2, SetVariant::Ball)?;
    let r = profile_rational_image(2, 5, 2)?;
    let s = profile_semialgebraic(5, 2, 2, 3, None)?;
    println!("quadric surface in R^5 (ball): ln K = {:.4}", v.log_k());
    println!("rational image R^2 -> R^5:     ln K = {:.4}", r.log_k());
    println!("semialgebraic, 3 constraints:  ln K = {:.4}", s.log_k());

    // a union is regular with K1 + K2 and the larger dimension
    let u = profile_union(profile_union(v, r), s);
    println!("union of all three:            ln K = {:.4}, n = {}", u.log_k(), u.n);

    let shape = TensorShape::new(vec![3, 3, 3])?;
    let cp = profile_cp_tensor(&shape, 2, BallOrSphere::Sphere)?;
    println!("unit-norm rank-2 3x3x3 tensors: ln K = {:.4}, n = {}", cp.log_k(), cp.n);
    Ok(())
}
