//! Numeric arguments: plain floats or multiples of π such as `pi/8`,
//! `2pi`, `-3*pi/4` or `0.25π`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

fn plain(text: &str, whole: &str) -> Result<f64> {
    text.parse::<f64>()
        .map_err(|_| Error::Format(format!("cannot read {whole:?} as a number")))
}

pub fn parse_number(text: &str) -> Result<f64> {
    let s: String = text.trim().to_lowercase().replace('π', "pi").replace(' ', "");
    if s.is_empty() {
        return Err(Error::Format("empty number".into()));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(plain(d, text)?)),
        None => (s.as_str(), None),
    };
    let value = match num.strip_suffix("pi") {
        Some(coef) => {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => plain(c, text)?,
            };
            c * PI
        }
        None => plain(num, text)?,
    };
    match den {
        Some(d) if d == 0.0 => Err(Error::Format(format!("division by zero in {text:?}"))),
        Some(d) => Ok(value / d),
        None => Ok(value),
    }
}

/// `name=start:stop:step` with an inclusive stop.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub name: String,
    pub values: Vec<f64>,
}

pub fn parse_grid(text: &str) -> Result<GridSpec> {
    let (name, range) = text
        .split_once('=')
        .ok_or_else(|| Error::Format(format!("grid {text:?} must look like name=start:stop:step")))?;
    let parts: Vec<&str> = range.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(Error::Format(format!("grid {text:?} must look like name=start:stop:step")));
    };
    Ok(GridSpec {
        name: name.trim().to_string(),
        values: grid_values(parse_number(start)?, parse_number(stop)?, parse_number(step)?)?,
    })
}

/// `start + i·step` for every `i` that stays within `stop`. The last point
/// snaps onto `stop` when it lands within rounding distance of it.
pub fn grid_values(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::Domain(format!(
            "grid {start}:{stop}:{step} needs a positive step and start ≤ stop"
        )));
    }
    let span = (stop - start) / step;
    if span > 1e7 {
        return Err(Error::Domain(format!("grid {start}:{stop}:{step} has too many points")));
    }
    let count = (span + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| {
            let v = start + i as f64 * step;
            if (v - stop).abs() <= 1e-9 * step {
                stop
            } else {
                v
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_expressions() {
        assert_eq!(parse_number("0.5").unwrap(), 0.5);
        assert_eq!(parse_number("pi").unwrap(), PI);
        assert_eq!(parse_number("pi/8").unwrap(), PI / 8.0);
        assert_eq!(parse_number("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_number("-3*pi/4").unwrap(), -3.0 * PI / 4.0);
        assert_eq!(parse_number("π/2").unwrap(), PI / 2.0);
        assert_eq!(parse_number("1/4").unwrap(), 0.25);
        assert!(parse_number("x").is_err());
        assert!(parse_number("pi/0").is_err());
    }

    #[test]
    fn inclusive_grids() {
        assert_eq!(grid_values(0.0, 1.0, 0.01).unwrap().len(), 101);
        let g = grid_values(0.0, 2.0 * PI, PI / 50.0).unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!(*g.last().unwrap(), 2.0 * PI);
        let g = parse_grid("theta=0:pi:pi/4").unwrap();
        assert_eq!(g.name, "theta");
        assert_eq!(g.values.len(), 5);
        assert!(grid_values(1.0, 0.0, 0.1).is_err());
        assert!(grid_values(0.0, 1.0, 0.0).is_err());
    }
}
