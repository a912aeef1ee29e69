"""HTTP service layer (FastAPI) over the simulator core."""
