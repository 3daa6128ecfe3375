import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    // the contract suite spawns a real Python server and drives whole
    // sessions through it, so individual tests can take a while
    testTimeout: 30000,
    hookTimeout: 60000,
  },
});
