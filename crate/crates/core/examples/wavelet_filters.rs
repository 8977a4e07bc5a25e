// Scaling filters: QMF residuals, the cascade `φ̂`, and the tightness
// defect `1 - Σ|φ̂(t+n)|²`.

use spectral_walks::circle::{cascade_phihat, qmf_check, tightness_defect, translate_frame, FilterCoeffs};
use spectral_walks::Result;

pub fn run() -> Result<()> {
    for (name, f) in [
        ("haar", FilterCoeffs::haar()),
        ("four-tap", FilterCoeffs::daubechies4()),
        ("stretched", FilterCoeffs::stretched_haar()),
    ] {
        let qmf = qmf_check(&f);
        let defects: Vec<String> =
            [0.1, 0.3, 0.5].iter().map(|t| format!("{:+.2e}", tightness_defect(&f, *t, 512, 20))).collect();
        let frame = translate_frame(&f, 128, 16, 256);
        println!(
            "{name:>9}  qmf {:.1e}  phihat(0.5) {:.6}  defects {}  (int P^2, int P) = ({:.4}, {:.4})",
            qmf.max_residual(),
            cascade_phihat(&f, 0.5, 20).norm(),
            defects.join(" "),
            frame.translate_sum,
            frame.norm_sq
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run()
}
