#pragma once

#define PAGEVAL_VERSION "0.1.0"
