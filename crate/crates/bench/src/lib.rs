//! Inputs shared by the kernel benchmarks.

use torelli::surface::{twist_library, SurfaceEndo};

/// `t_a12 * t_e * t_d` composed `reps` times, genus 3.
pub fn composite(reps: usize) -> SurfaceEndo {
    let lib = twist_library(3);
    let one = lib["t_a12"].compose(&lib["t_e"]).and_then(|x| x.compose(&lib["t_d"])).expect("library twists compose");
    (1..reps).fold(one.clone(), |acc, _| acc.compose(&one).expect("composable"))
}

/// The separating twist `t_d` in genus `g`.
pub fn separating(g: usize) -> SurfaceEndo {
    twist_library(g)["t_d"].clone()
}
