
DEFAULT_LOG_FILE = None
DEFAULT_LOG_LEVEL = 'INFO'
DEFAULT_LOG_FORMAT = '%(asctime)s.%(msecs)03d %(levelname)-.1s %(filename)s:%(lineno)d %(process)d %(name)s %(message)s'
DEFAULT_LOG_CFG_PATH = 'log_cfg.json'

# smallest edge length accepted by validate, larger values come from Config
MIN_EDGE_LENGTH = 1e-9

DIRICHLET_ROLE_NAME = 'dirichlet'
FREE_ROLE_NAME = 'free'

ENERGY_FUNCTIONAL_NAME = 'energy'
LAMBDA1_FUNCTIONAL_NAME = 'lambda1'

EXIT_OK = 0
EXIT_INTERNAL_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_BAD_INPUT = 3
