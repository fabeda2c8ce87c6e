//! Standalone gnuplot scripts for the emitted data files.

use std::fmt;
use std::path::Path;

use artin_core::scattering::approx_resonances;
use artin_core::zeros::first_n_zeros;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Phase,
    Wave,
    Resonances,
}

impl fmt::Display for PlotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlotKind::Phase => write!(f, "phase"),
            PlotKind::Wave => write!(f, "wave"),
            PlotKind::Resonances => write!(f, "resonances"),
        }
    }
}

#[derive(Debug)]
pub enum PlotError {
    Io(std::io::Error),
    SchemaMismatch { expected: String, found: String },
    Compute(artin_core::Error),
}

impl fmt::Display for PlotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlotError::Io(e) => write!(f, "cannot read data file: {e}"),
            PlotError::SchemaMismatch { expected, found } => {
                write!(f, "schema mismatch: expected header '{expected}', found '{found}'")
            }
            PlotError::Compute(e) => write!(f, "{e}"),
        }
    }
}

fn check_header(data_path: &Path, kind: PlotKind) -> Result<(), PlotError> {
    let contents = std::fs::read_to_string(data_path).map_err(PlotError::Io)?;
    let found = contents.lines().next().unwrap_or("").trim().to_string();
    let ok = match kind {
        PlotKind::Phase => found == "E,p,delta,re_S,im_S",
        PlotKind::Wave => found == "x,y_tilde,re_psi,im_psi,modes_used",
        PlotKind::Resonances => found.starts_with("n,u,E,Gamma"),
    };
    if ok {
        Ok(())
    } else {
        let expected = match kind {
            PlotKind::Phase => "E,p,delta,re_S,im_S".to_string(),
            PlotKind::Wave => "x,y_tilde,re_psi,im_psi,modes_used".to_string(),
            PlotKind::Resonances => "n,u,E,Gamma…".to_string(),
        };
        Err(PlotError::SchemaMismatch { expected, found })
    }
}

/// Produce a gnuplot script plotting the CSV at `data_path`.
///
/// The data file must already exist with the schema of the given kind;
/// the script refers to it by the path string passed in, so pass a path
/// relative to where the script will live.
pub fn emit_plot_script(data_path: &Path, kind: PlotKind) -> Result<String, PlotError> {
    check_header(data_path, kind)?;
    let data = data_path.display();
    let mut s = String::new();
    s.push_str("# gnuplot script; run as: gnuplot -p <script>\n");
    s.push_str("set datafile separator \",\"\n");
    match kind {
        PlotKind::Phase => {
            s.push_str("set xlabel \"E\"\nset ylabel \"delta(E)\"\n");
            s.push_str("set key off\n");
            let zeros = first_n_zeros(10).map_err(PlotError::Compute)?;
            let res = approx_resonances(&zeros).map_err(PlotError::Compute)?;
            for r in &res {
                s.push_str(&format!(
                    "set arrow from {0},graph 0 to {0},graph 1 nohead dashtype 2 lc rgb \"gray\"\n",
                    r.energy
                ));
            }
            s.push_str(&format!(
                "plot \"{data}\" using 1:3 skip 1 with lines lw 2 title \"phase shift\"\n"
            ));
        }
        PlotKind::Wave => {
            s.push_str("set xlabel \"x\"\nset ylabel \"y~\"\n");
            s.push_str("set title \"|psi|\"\n");
            s.push_str(&format!(
                "plot \"{data}\" using 1:2:(sqrt($3*$3 + $4*$4)) skip 1 with points pt 5 ps 1.6 palette notitle\n"
            ));
        }
        PlotKind::Resonances => {
            s.push_str("set xlabel \"Re E\"\nset ylabel \"Im E\"\n");
            s.push_str("set title \"S-matrix poles\"\n");
            s.push_str("set yrange [*:0]\n");
            s.push_str(&format!(
                "plot \"{data}\" using 3:(-$4) skip 1 with points pt 7 title \"poles E - iW\"\n"
            ));
        }
    }
    Ok(s)
}
