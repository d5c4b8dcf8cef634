//! Density-based clustering of users, cluster-to-UAV assignment and the
//! resulting association matrix.

mod association;
pub mod hdbscan;
pub mod hungarian;

pub use association::{
    assign_clusters, nearest_association, update_association, AssociationMatrix, AssociationMode, Associator,
    ClusterAssignment,
};
pub use hdbscan::{hdbscan_cluster, ClusterResult, HdbscanParams};
pub use hungarian::{hungarian_assign, Assignment};
