use hydrolab_core::chebyshev::ChebyshevGrid;
use hydrolab_core::reduced::*;
use std::sync::Arc;

fn main() {
    let g = Arc::new(ChebyshevGrid::new(33));
    let init = ReducedState::new(g, vec![0.0; 33], vec![5.0; 33], 2.0).unwrap();
    let (traj, _) = simulate(&init, 1.0, 1e6, &SimOptions::default()).unwrap();
    let last = traj.snapshots.last().unwrap();
    let maxw = last.w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let maxv = last.v.iter().fold(0.0f64, |m, v| m.max((v - 5.0).abs()));
    println!("max|w| = {maxw:e}   max|v-5| = {maxv:e}");
}
