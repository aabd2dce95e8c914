//! CSV tables. Reals are written with 17 significant digits in scientific
//! notation, which round-trips every double and does not depend on locale.

use std::io::{self, Write};

use crate::fracdim::{BoxCountReport, SojournEstimate};
use crate::game::GainPath;
use crate::ifs::SeriesRow;
use crate::path::SampledPath;
use crate::steinhaus::XiPoint;

/// Full-precision, locale-independent rendering of a real.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// `k,S_k` for `k = 1..=n`; exact integers when the path carries them.
pub fn write_gain_path<W: Write>(w: &mut W, path: &GainPath) -> io::Result<()> {
    writeln!(w, "k,S_k")?;
    match path.exact_sums() {
        Some(exact) => {
            for (i, s) in exact.iter().enumerate() {
                writeln!(w, "{},{}", i + 1, s)?;
            }
        }
        None => {
            for (i, &s) in path.sums().iter().enumerate() {
                writeln!(w, "{},{}", i + 1, num(s))?;
            }
        }
    }
    Ok(())
}

/// `t,v`.
pub fn write_sampled_path<W: Write>(w: &mut W, path: &SampledPath) -> io::Result<()> {
    writeln!(w, "t,v")?;
    for &(t, v) in path.points() {
        writeln!(w, "{},{}", num(t), num(v))?;
    }
    Ok(())
}

/// `gamma,xi,xi_left`; the last column is empty where `ξ` is continuous.
pub fn write_xi_points<W: Write>(w: &mut W, points: &[XiPoint]) -> io::Result<()> {
    writeln!(w, "gamma,xi,xi_left")?;
    for p in points {
        let left = p.left_value.map(num).unwrap_or_default();
        writeln!(w, "{},{},{}", num(p.gamma.value()), num(p.value), left)?;
    }
    Ok(())
}

/// `x,y`.
pub fn write_points<W: Write>(w: &mut W, points: &[[f64; 2]]) -> io::Result<()> {
    writeln!(w, "x,y")?;
    for p in points {
        writeln!(w, "{},{}", num(p[0]), num(p[1]))?;
    }
    Ok(())
}

/// `r,alpha1,alpha2,term`.
pub fn write_series<W: Write>(w: &mut W, rows: &[SeriesRow]) -> io::Result<()> {
    writeln!(w, "r,alpha1,alpha2,term")?;
    for row in rows {
        writeln!(w, "{},{},{},{}", row.r, num(row.alpha1), num(row.alpha2), num(row.term))?;
    }
    Ok(())
}

/// `j,delta,count`, then a `# slope=... r_squared=...` trailer.
pub fn write_box_counts<W: Write>(w: &mut W, report: &BoxCountReport) -> io::Result<()> {
    writeln!(w, "j,delta,count")?;
    for ((j, delta), count) in report.js.iter().zip(&report.deltas).zip(&report.counts) {
        writeln!(w, "{},{},{}", j, num(*delta), count)?;
    }
    writeln!(w, "# slope={} r_squared={}", num(report.slope), num(report.r_squared))
}

/// `a,mean_time,ratio,std_error`.
pub fn write_sojourn<W: Write>(w: &mut W, estimates: &[SojournEstimate]) -> io::Result<()> {
    writeln!(w, "a,mean_time,ratio,std_error")?;
    for e in estimates {
        writeln!(w, "{},{},{},{}", num(e.a), num(e.mean_time), num(e.ratio()), num(e.std_error))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::CoinParams;

    fn render(f: impl FnOnce(&mut Vec<u8>) -> io::Result<()>) -> String {
        let mut buf = Vec::new();
        f(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, 0.0] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn gain_path_rows() {
        let path = GainPath::from_gains(&[2.0, 8.0, 2.0], CoinParams::fair()).unwrap();
        let text = render(|w| write_gain_path(w, &path));
        assert_eq!(text.lines().nth(2), Some("2,1.0000000000000000e1"));
        let simulated = GainPath::simulate(5, CoinParams::fair(), 1).unwrap();
        let text = render(|w| write_gain_path(w, &simulated));
        let last = simulated.exact_sums().unwrap()[4];
        assert_eq!(text.lines().last().unwrap(), format!("5,{last}"));
    }

    #[test]
    fn sampled_path_rows() {
        let path = SampledPath::new(vec![(0.5, 1.0), (1.0, -1.0)], (0.5, 1.0)).unwrap();
        let text = render(|w| write_sampled_path(w, &path));
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("t,v\n5.0000000000000000e-1,1.0000000000000000e0\n"));
    }
}
