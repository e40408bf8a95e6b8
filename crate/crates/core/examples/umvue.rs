//! The UMVUE in its closed form, its decomposed form, and the triple
//! integral it must equal, in each of the four orderings of (u, v, w).
//!
//! cargo run --release --example umvue

use ordrel::model::SufficientStats;
use ordrel::specfun::EvalPolicy;
use ordrel::umvue::{umvue_oracle, umvue_p, umvue_p_decomposed, UmvueRegion};

fn main() -> ordrel::Result<()> {
    let policy = EvalPolicy::default();
    println!("{:<8}{:>16}{:>16}{:>16}", "region", "closed", "decomposed", "oracle");
    for sums in [[1.0, 2.0, 3.0], [1.0, 3.0, 2.0], [2.0, 0.5, 3.0], [3.0, 2.0, 0.7]] {
        let s = SufficientStats::new([3, 4, 2], sums)?;
        println!(
            "{:<8}{:>16.12}{:>16.12}{:>16.12}",
            format!("{:?}", UmvueRegion::select(s.u, s.v, s.w)),
            umvue_p(&s, &policy)?,
            umvue_p_decomposed(&s)?,
            umvue_oracle(&s, 1e-10)?
        );
    }
    Ok(())
}
