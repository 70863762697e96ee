//! How far the centred proxy overshoots once the mean drifts off centre.

use pec_advantage::centering::{
    conservative_proxy, default_shift_axis, default_width_axis, relative_error, relative_error_map,
    true_success, CenteringPoint,
};

fn main() -> pec_advantage::Result<()> {
    let map = relative_error_map(&default_shift_axis(), &default_width_axis())?;
    for shift in [0.5, 0.7, 0.75, 0.8, 0.99] {
        if let Some(m) = map.max_over(0.1, shift) {
            println!(
                "shift <= {shift:.2}: worst relative error {:.4} at ({:.2}, {:.4})",
                m.value, m.rel_shift, m.rel_width
            );
        }
    }

    let pt = CenteringPoint::new(0.5, 0.05)?;
    println!(
        "(0.5, 0.05): true {:.6}, conservative proxy {:.6}",
        true_success(pt),
        conservative_proxy(0.05)?
    );
    let corner = CenteringPoint::new(0.99, 0.01)?;
    println!("(0.99, 0.01): relative error {:.4}", relative_error(corner).unwrap_or(f64::NAN));
    Ok(())
}
