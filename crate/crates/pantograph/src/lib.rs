//! pantograph: exact computations in pants graphs of finite-type surfaces.
//!
//! The crate has four layers:
//!
//! * [`surface`]: curves in normal coordinates on ideal triangulations,
//!   geometric intersection numbers (two independent algorithms), Dehn
//!   twists, half-twists, mediant surgery, and complement classification;
//! * [`pants`]: pants decompositions, elementary moves, Farey charts, finite
//!   balls of the pants graph, and the circuit/square/geodesic analyzers;
//! * [`rigid`]: the finite rigid subgraphs X_{0,n}, X_{1,2}, X_{2,0} and
//!   X_{g,n}, built exactly from seed data with structural self-checks;
//! * [`verify`]: enumeration of injective simplicial embeddings of a rigid
//!   set into a ball, certification that each is induced by a subsurface
//!   embedding, and a harness for the structural lemmas.

pub mod error;
pub mod pants;
pub mod rigid;
pub mod surface;
pub mod verify;
