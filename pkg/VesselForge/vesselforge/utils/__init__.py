from vesselforge.utils.atomic import atomic_output_dir, atomic_write_text
from vesselforge.utils.logger import get_logger, setup_logger
from vesselforge.utils.parallel import parallel_map, resolve_jobs
