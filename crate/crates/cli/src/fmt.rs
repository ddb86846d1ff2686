/// Formats `x` with 12 significant digits, in positional notation when the
/// magnitude allows it.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = 11 - exp;
    if (0..=20).contains(&decimals) {
        format!("{:.*}", decimals as usize, x)
    } else {
        format!("{x:.11e}")
    }
}
