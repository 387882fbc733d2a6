import { defineConfig } from 'vitest/config'

export default defineConfig({
  build: {
    outDir: 'dist',
  },
  server: {
    // during development the API runs separately; proxy it through
    proxy: {
      '/kb': 'http://127.0.0.1:8000',
      '/sessions': 'http://127.0.0.1:8000',
    },
  },
  test: {
    environment: 'jsdom',
    testTimeout: 30000,
    hookTimeout: 30000,
  },
})
