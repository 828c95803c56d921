#pragma once

#define NLOSBENCH_VERSION "0.1.0"
