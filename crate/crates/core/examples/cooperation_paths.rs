//! Two groups under a payoff rule: the zero-altruism contour and the path traced
//! when the small group answers the large one rationally.
//!
//! ```text
//! cargo run --example cooperation_paths
//! ```

use stgames::cobb_douglas::{
    cooperation_path, zero_altruism_contour, PayoffScheme, TwoGroupSetting, ValueFunction,
};

fn main() -> stgames::Result<()> {
    let setting = TwoGroupSetting::new(0.75, ValueFunction::power(1.0, 1.5)?, 2, 10)?;
    for scheme in [PayoffScheme::Equal, PayoffScheme::hybrid(0.5)?] {
        println!("{}", scheme.label());
        let contour = zero_altruism_contour(&setting, scheme, 0.5)?;
        match contour.smallest() {
            Some(xa) => println!("  zero altruism at xB=0.5 once xA reaches {xa:.6}"),
            None => println!("  no zero-altruism crossing at xB=0.5"),
        }
        for p in cooperation_path(&setting, scheme, 6, 1e-9)? {
            println!(
                "  xB {:.2} -> xA {:.4}: a {:+.4}, c {:+.4} ({})",
                p.xb_avg,
                p.xa_avg,
                p.point.altruism,
                p.point.competitive,
                p.quadrant.as_str()
            );
        }
    }
    Ok(())
}
