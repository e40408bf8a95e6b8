//! The ordering probability in closed form against a brute-force count,
//! for each member of the transform family.
//!
//! cargo run --release --example reliability_model

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ordrel::model::{reliability_p, reliability_pn, ParamTriple, TransformFamily};

fn main() -> ordrel::Result<()> {
    let theta = ParamTriple::new(2.0, 1.0, 0.5)?;
    let p = reliability_p(&theta);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 200_000;

    for family in [
        TransformFamily::exponential(),
        TransformFamily::weibull(1.6)?,
        TransformFamily::kumaraswamy(2.0)?,
    ] {
        let [t1, t2, t3] = theta.as_array();
        let x = family.sample(t1, n, &mut rng)?;
        let y = family.sample(t2, n, &mut rng)?;
        let z = family.sample(t3, n, &mut rng)?;
        let hits = (0..n).filter(|&i| x[i] < y[i] && y[i] < z[i]).count();
        println!(
            "{:<12} P = {p:.4}   empirical {:.4}",
            format!("{:?}", family.kind),
            hits as f64 / n as f64
        );
    }

    // The n! orderings partition the sample space.
    let th = [0.5, 1.0, 2.0, 0.25];
    let mut total = 0.0;
    let mut perm = [0, 1, 2, 3];
    permutations(&mut perm, 0, &mut |idx| {
        total += reliability_pn(&idx.map(|i| th[i])).unwrap();
    });
    println!("sum over the 24 orderings of four variables: {total:.15}");
    Ok(())
}

fn permutations(a: &mut [usize; 4], k: usize, f: &mut impl FnMut([usize; 4])) {
    if k == a.len() {
        return f(*a);
    }
    for i in k..a.len() {
        a.swap(k, i);
        permutations(a, k + 1, f);
        a.swap(k, i);
    }
}
