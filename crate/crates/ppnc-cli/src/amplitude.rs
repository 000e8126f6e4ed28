//! Parsers for amplitude and angle expressions used on the command line and
//! in config files.
//!
//! Amplitudes accept the caption-style polar form `sqrt12@pi/3`
//! (magnitude `sqrt(12)`, phase `pi/3`) as well as cartesian literals like
//! `1.5+0.3i`, `-2i` or `0.7`. Angles accept `pi`, `-pi/4`, `2pi/3`,
//! `3/4pi`-style fractions of pi, or plain radians.

use num_complex::Complex64 as C64;

/// Parses an angle in radians; `pi` may appear as a factor.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty angle".into());
    }
    if let Ok(v) = s.parse::<f64>() {
        return Ok(v);
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(s)),
    };
    let (num_str, den): (&str, f64) = match body.split_once('/') {
        Some((n, d)) => (
            n,
            d.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad angle denominator in '{s}'"))?,
        ),
        None => (body, 1.0),
    };
    let num_str = num_str.trim();
    let num = if let Some(coef) = num_str.strip_suffix("pi") {
        let coef = coef.trim();
        let c = if coef.is_empty() {
            1.0
        } else {
            coef.parse::<f64>().map_err(|_| format!("bad pi coefficient in '{s}'"))?
        };
        c * std::f64::consts::PI
    } else {
        num_str.parse::<f64>().map_err(|_| format!("bad angle '{s}'"))?
    };
    if den == 0.0 {
        return Err(format!("zero denominator in angle '{s}'"));
    }
    Ok(sign * num / den)
}

/// Parses a complex amplitude.
pub fn parse_amplitude(s: &str) -> Result<C64, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty amplitude".into());
    }
    if let Some((mag_str, ang_str)) = s.split_once('@') {
        let mag_str = mag_str.trim();
        let mag = if let Some(arg) = mag_str.strip_prefix("sqrt") {
            let v = arg
                .parse::<f64>()
                .map_err(|_| format!("bad sqrt argument in '{s}'"))?;
            if v < 0.0 {
                return Err(format!("negative sqrt argument in '{s}'"));
            }
            v.sqrt()
        } else {
            mag_str.parse::<f64>().map_err(|_| format!("bad magnitude in '{s}'"))?
        };
        let ang = parse_angle(ang_str)?;
        return Ok(C64::from_polar(mag, ang));
    }
    parse_cartesian(s)
}

/// `a+bi` / `a-bi` / `bi` / `a` literals.
fn parse_cartesian(s: &str) -> Result<C64, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(body) = compact.strip_suffix('i') {
        // split at the last +/- that is not an exponent sign or leading sign
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re: f64 = body[..k]
                    .parse()
                    .map_err(|_| format!("bad real part in '{s}'"))?;
                let im_str = &body[k..];
                let im: f64 = if im_str == "+" {
                    1.0
                } else if im_str == "-" {
                    -1.0
                } else {
                    im_str.parse().map_err(|_| format!("bad imaginary part in '{s}'"))?
                };
                Ok(C64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() {
                    1.0
                } else if body == "-" {
                    -1.0
                } else {
                    body.parse().map_err(|_| format!("bad imaginary literal '{s}'"))?
                };
                Ok(C64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = compact.parse().map_err(|_| format!("bad amplitude '{s}'"))?;
        Ok(C64::new(re, 0.0))
    }
}
