//! Covering, tube-volume, hit-probability and width bounds for the twisted
//! cubic `t -> (t, t^2, t^3)` with `|t| <= 1`.
//!
//! ```text
//! cargo run --example covering_bounds
//! ```

use regcover::bounds::{covering_bound_log, tube_hit_probability_log, tube_volume_log, width_bound_regular};
use regcover::regularity::{profile_poly_image, SetVariant};
use regcover::DEFAULT_CONSTANT;

fn main() -> regcover::Result<()> {
    let profile = profile_poly_image(1, 3, SetVariant::Ball)?;
    // every point lies in the ball of radius sqrt(3)
    let t = 3f64.sqrt();

    println!("{:>8} {:>14} {:>16} {:>18}", "eps", "ln N(V, eps)", "ln vol(tube)", "ln P(hit, sigma=1)");
    for eps in [0.5, 0.1, 0.01, 0.001] {
        let cover = covering_bound_log(&profile, 3, t, eps)?;
        let tube = tube_volume_log(&profile, 3, t, eps, DEFAULT_CONSTANT)?;
        let hit = tube_hit_probability_log(3, 1, 3, eps, 1.0, DEFAULT_CONSTANT)?;
        println!("{eps:>8} {:>14.4} {:>16.4} {:>18.4}", cover.value, tube.value, hit.value);
    }

    let width = width_bound_regular(&profile, 3, t)?;
    println!("Gaussian width bound: {:.4}", width.value);
    println!("constants used by the tube bound: {:?}", tube_volume_log(&profile, 3, t, 0.1, 3.0)?.constants_used);
    Ok(())
}
