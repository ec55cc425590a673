//! Exact conditional bias-variance split for ridge on polynomial
//! features, checked against redrawn noise.

use kernel_regimes::bounds::bias_variance_oracle;
use kernel_regimes::experiments::{conditional_feature_risk, sample_inputs, stream_rng};
use kernel_regimes::kernels::{monomial_exponents, polynomial_design, polynomial_embedding_gram, DomainSpec};

fn main() -> kernel_regimes::Result<()> {
    let domain = DomainSpec::cube(1, -1.0, 1.0);
    let exps = monomial_exponents(1, 3);
    let theta = [0.5, -1.0, 0.25, 2.0];
    let gram = polynomial_embedding_gram(&domain, &exps)?;
    for n in [10, 40, 160] {
        let x = sample_inputs(&domain, n, &mut stream_rng(11, &[n as u64]));
        let phi = polynomial_design(&x, &exps)?;
        let r = bias_variance_oracle(&phi, &theta, &gram, 1.0)?;
        let mc = conditional_feature_risk(&phi, &theta, &gram, 1.0, 4000, 1)?;
        println!(
            "n={n:>4}: bias {:.4e}, variance {:.4e}, total {:.4e}; Monte Carlo {:.4e} +- {:.1e}",
            r.bias,
            r.noise * r.variance_trace / n as f64,
            r.total,
            mc.mean,
            mc.std_error
        );
    }
    Ok(())
}
