//! Value specs on the command line: `x`, `a,b,c` or `start:stop[:step]`.

use rabi_core::phase::Axis;

#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    List(Vec<f64>),
    Span { start: f64, stop: f64, step: Option<f64> },
}

fn number(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("not a finite number: {s:?}"))
    }
}

pub fn parse(s: &str) -> Result<Values, String> {
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let (start, stop, step) = match parts.as_slice() {
            [a, b] => (number(a)?, number(b)?, None),
            [a, b, c] => (number(a)?, number(b)?, Some(number(c)?)),
            _ => return Err(format!("range must be start:stop[:step], got {s:?}")),
        };
        if stop < start {
            return Err(format!("range stop {stop} is below start {start}"));
        }
        if let Some(step) = step {
            if step <= 0.0 {
                return Err(format!("range step must be > 0, got {step}"));
            }
        }
        Ok(Values::Span { start, stop, step })
    } else {
        let values = s.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
        Ok(Values::List(values))
    }
}

impl Values {
    /// Number of samples: the step count when a step is given, else `resolution`.
    fn count(start: f64, stop: f64, step: Option<f64>, resolution: usize) -> usize {
        match step {
            // tolerate a stop that is a rounding error short of a whole step
            Some(step) => ((stop - start) / step + 1e-9).floor() as usize + 1,
            None => resolution,
        }
    }

    pub fn values(&self, resolution: usize) -> Vec<f64> {
        match *self {
            Values::List(ref v) => v.clone(),
            Values::Span { start, stop, step } => {
                let n = Self::count(start, stop, step, resolution);
                match step {
                    Some(step) => (0..n).map(|i| start + i as f64 * step).collect(),
                    None if n <= 1 => vec![start],
                    None => (0..n)
                        .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
                        .collect(),
                }
            }
        }
    }

    /// Evenly spaced grid axis; lists are not accepted.
    pub fn axis(&self, resolution: usize) -> Result<Axis, String> {
        match *self {
            Values::List(_) => Err("grid axes need a range start:stop[:step]".into()),
            Values::Span { start, stop, step } => {
                let n = Self::count(start, stop, step, resolution);
                let stop = match step {
                    Some(step) => start + (n - 1) as f64 * step,
                    None => stop,
                };
                Axis::new(start, stop, n).map_err(|e| e.to_string())
            }
        }
    }
}
